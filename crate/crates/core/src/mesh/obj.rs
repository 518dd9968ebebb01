//! Wavefront OBJ reader/writer.
//!
//! Only `v` and `f` records are interpreted; faces must be triangles.
//! Indices are 1-based on disk and converted to 0-based in memory.
//! Coordinates are written with shortest round-trip formatting, so a
//! save/load cycle reproduces the vertex array bitwise.

use std::fs;
use std::path::Path;

use crate::error::{Error, MeshDefect, Result};
use crate::mesh::TriangleMesh;

pub(super) fn load_obj(path: &Path) -> Result<TriangleMesh> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for c in &mut coords {
                    let tok = tokens.next().ok_or_else(|| {
                        Error::parse(path, lineno + 1, "vertex record needs 3 coordinates")
                    })?;
                    *c = tok.parse().map_err(|_| {
                        Error::parse(path, lineno + 1, format!("bad coordinate {tok:?}"))
                    })?;
                }
                // Extra components (w, vertex colors) are ignored.
                vertices.push(coords);
            }
            Some("f") => {
                let refs: Vec<&str> = tokens.collect();
                if refs.len() != 3 {
                    return Err(Error::parse(
                        path,
                        lineno + 1,
                        format!("face has {} vertices, only triangles supported", refs.len()),
                    ));
                }
                let mut face = [0usize; 3];
                for (slot, r) in refs.iter().enumerate() {
                    // `i`, `i/t`, `i/t/n` and `i//n` all start with the
                    // vertex index.
                    let idx_tok = r.split('/').next().unwrap_or("");
                    let one_based: i64 = idx_tok.parse().map_err(|_| {
                        Error::parse(path, lineno + 1, format!("bad face index {r:?}"))
                    })?;
                    let zero_based = one_based - 1;
                    if zero_based < 0 {
                        return Err(Error::InvalidMesh(MeshDefect::IndexOutOfRange {
                            face: faces.len(),
                            index: zero_based,
                            n: vertices.len(),
                        }));
                    }
                    face[slot] = zero_based as usize;
                }
                faces.push(face);
            }
            // Normals, texcoords, groups, materials: out of scope.
            _ => {}
        }
    }

    Ok(TriangleMesh::new_unchecked(vertices, faces, None))
}

pub(super) fn save_obj(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    let mut out = String::new();
    for v in mesh.vertices() {
        // `{}` prints the shortest decimal that parses back to the same f64.
        out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for f in mesh.faces() {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use crate::mesh::{MeshFormat, TriangleMesh};

    #[test]
    fn minimal_obj_parses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tri.obj");
        std::fs::write(&path, "# comment\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n").unwrap();
        let mesh = TriangleMesh::load(&path, MeshFormat::Obj).unwrap();
        assert_eq!(mesh.vertex_count(), 3);
        assert_eq!(mesh.face_count(), 1);
        assert_eq!(mesh.faces()[0], [0, 1, 2]);
    }

    #[test]
    fn face_index_zero_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.obj");
        std::fs::write(&path, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n").unwrap();
        let err = TriangleMesh::load(&path, MeshFormat::Obj).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::InvalidMesh(crate::MeshDefect::IndexOutOfRange { index: -1, .. })
        ));
    }

    #[test]
    fn slash_refs_and_single_triangle_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.obj");
        std::fs::write(&path, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2 3/3\n").unwrap();
        let mesh = TriangleMesh::load(&path, MeshFormat::Obj).unwrap();
        mesh.save(&path, MeshFormat::Obj).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let v_lines = text.lines().filter(|l| l.starts_with("v ")).count();
        let f_lines = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!((v_lines, f_lines), (3, 1));
    }

    #[test]
    fn save_load_is_bitwise_on_vertices() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.obj");
        let mesh = crate::synthetic::icosphere(2);
        mesh.save(&path, MeshFormat::Obj).unwrap();
        let back = TriangleMesh::load(&path, MeshFormat::Obj).unwrap();
        assert_eq!(mesh.vertices(), back.vertices());
        assert_eq!(mesh.faces(), back.faces());
    }

    #[test]
    fn landmark_sidecar_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lm.obj");
        let mesh = crate::synthetic::icosphere(1)
            .with_landmarks(Some(vec![0, 5, 11]))
            .unwrap();
        mesh.save(&path, MeshFormat::Obj).unwrap();
        let sidecar = std::fs::read_to_string(dir.path().join("lm.lmk")).unwrap();
        assert_eq!(sidecar, "0\n5\n11\n");
        let back = TriangleMesh::load(&path, MeshFormat::Obj).unwrap();
        assert_eq!(back.landmark_indices(), Some(&[0, 5, 11][..]));
    }
}
