//! Binary little-endian PLY 1.0 reader/writer.
//!
//! The writer emits float64 x/y/z and `list uchar int` faces. The reader
//! additionally accepts float32 coordinates and common index list types.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;

#[derive(Clone, Copy, PartialEq)]
enum Scalar {
    F32,
    F64,
    U8,
    I32,
    U32,
}

impl Scalar {
    fn parse(tok: &str) -> Option<Self> {
        match tok {
            "float" | "float32" => Some(Scalar::F32),
            "double" | "float64" => Some(Scalar::F64),
            "uchar" | "uint8" => Some(Scalar::U8),
            "int" | "int32" => Some(Scalar::I32),
            "uint" | "uint32" => Some(Scalar::U32),
            _ => None,
        }
    }

    fn size(self) -> usize {
        match self {
            Scalar::U8 => 1,
            Scalar::F32 | Scalar::I32 | Scalar::U32 => 4,
            Scalar::F64 => 8,
        }
    }

    fn read_f64(self, bytes: &[u8]) -> f64 {
        match self {
            Scalar::F32 => f32::from_le_bytes(bytes[..4].try_into().unwrap()) as f64,
            Scalar::F64 => f64::from_le_bytes(bytes[..8].try_into().unwrap()),
            Scalar::U8 => bytes[0] as f64,
            Scalar::I32 => i32::from_le_bytes(bytes[..4].try_into().unwrap()) as f64,
            Scalar::U32 => u32::from_le_bytes(bytes[..4].try_into().unwrap()) as f64,
        }
    }

    fn read_index(self, bytes: &[u8]) -> i64 {
        match self {
            Scalar::U8 => bytes[0] as i64,
            Scalar::I32 => i32::from_le_bytes(bytes[..4].try_into().unwrap()) as i64,
            Scalar::U32 => u32::from_le_bytes(bytes[..4].try_into().unwrap()) as i64,
            Scalar::F32 | Scalar::F64 => i64::MIN,
        }
    }
}

struct VertexLayout {
    /// (scalar type, byte offset) for x, y, z.
    coords: [(Scalar, usize); 3],
    stride: usize,
}

pub(super) fn load_ply(path: &Path) -> Result<TriangleMesh> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;

    // Header is ASCII lines terminated by "end_header".
    let mut offset = 0usize;
    let mut lines: Vec<(usize, String)> = Vec::new();
    loop {
        let rest = &bytes[offset..];
        let nl = rest
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::parse(path, lines.len() + 1, "unterminated header"))?;
        let line = String::from_utf8_lossy(&rest[..nl]).trim_end_matches('\r').to_string();
        offset += nl + 1;
        let done = line == "end_header";
        lines.push((lines.len() + 1, line));
        if done {
            break;
        }
        if lines.len() > 1000 {
            return Err(Error::parse(path, lines.len(), "header too large"));
        }
    }

    if lines.first().map(|(_, l)| l.as_str()) != Some("ply") {
        return Err(Error::parse(path, 1, "missing ply magic"));
    }

    let mut vertex_count = 0usize;
    let mut face_count = 0usize;
    let mut vertex_props: Vec<(Scalar, String)> = Vec::new();
    let mut face_list: Option<(Scalar, Scalar)> = None;
    let mut current: Option<&str> = None;

    for (lineno, line) in &lines[1..] {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["format", fmt, "1.0"] => {
                if *fmt != "binary_little_endian" {
                    return Err(Error::parse(
                        path,
                        *lineno,
                        format!("unsupported format {fmt:?} (need binary_little_endian)"),
                    ));
                }
            }
            ["comment", ..] | ["end_header"] => {}
            ["element", "vertex", count] => {
                vertex_count = count
                    .parse()
                    .map_err(|_| Error::parse(path, *lineno, "bad vertex count"))?;
                current = Some("vertex");
            }
            ["element", "face", count] => {
                face_count = count
                    .parse()
                    .map_err(|_| Error::parse(path, *lineno, "bad face count"))?;
                current = Some("face");
            }
            ["element", other, _] => {
                return Err(Error::parse(path, *lineno, format!("unsupported element {other:?}")));
            }
            ["property", "list", count_ty, idx_ty, _name] if current == Some("face") => {
                let c = Scalar::parse(count_ty)
                    .ok_or_else(|| Error::parse(path, *lineno, "bad list count type"))?;
                let i = Scalar::parse(idx_ty)
                    .filter(|s| !matches!(s, Scalar::F32 | Scalar::F64))
                    .ok_or_else(|| Error::parse(path, *lineno, "bad list index type"))?;
                face_list = Some((c, i));
            }
            ["property", ty, name] if current == Some("vertex") => {
                let s = Scalar::parse(ty)
                    .ok_or_else(|| Error::parse(path, *lineno, format!("bad property type {ty:?}")))?;
                vertex_props.push((s, name.to_string()));
            }
            ["format", ..] => {
                return Err(Error::parse(path, *lineno, "unsupported format version"));
            }
            _ => {
                return Err(Error::parse(path, *lineno, format!("unsupported header line {line:?}")));
            }
        }
    }

    let mut coords: [Option<(Scalar, usize)>; 3] = [None, None, None];
    let mut stride = 0usize;
    for (s, name) in &vertex_props {
        let slot = match name.as_str() {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => None,
        };
        if let Some(slot) = slot {
            coords[slot] = Some((*s, stride));
        }
        stride += s.size();
    }
    let layout = VertexLayout {
        coords: [
            coords[0].ok_or_else(|| Error::parse(path, 0, "missing x property"))?,
            coords[1].ok_or_else(|| Error::parse(path, 0, "missing y property"))?,
            coords[2].ok_or_else(|| Error::parse(path, 0, "missing z property"))?,
        ],
        stride,
    };
    let (count_ty, idx_ty) = if face_count > 0 {
        face_list.ok_or_else(|| Error::parse(path, 0, "missing face list property"))?
    } else {
        (Scalar::U8, Scalar::I32)
    };

    let need = vertex_count * layout.stride;
    if bytes.len() < offset + need {
        return Err(Error::parse(path, 0, "truncated vertex payload"));
    }
    let mut vertices = Vec::with_capacity(vertex_count);
    for i in 0..vertex_count {
        let base = offset + i * layout.stride;
        let mut v = [0.0f64; 3];
        for (axis, (s, off)) in layout.coords.iter().enumerate() {
            v[axis] = s.read_f64(&bytes[base + off..]);
        }
        vertices.push(v);
    }
    offset += need;

    let mut faces = Vec::with_capacity(face_count);
    for fi in 0..face_count {
        if bytes.len() < offset + count_ty.size() {
            return Err(Error::parse(path, 0, "truncated face payload"));
        }
        let count = count_ty.read_index(&bytes[offset..]);
        offset += count_ty.size();
        if count != 3 {
            return Err(Error::parse(
                path,
                0,
                format!("face {fi} has {count} vertices, only triangles supported"),
            ));
        }
        let mut face = [0usize; 3];
        for slot in &mut face {
            if bytes.len() < offset + idx_ty.size() {
                return Err(Error::parse(path, 0, "truncated face payload"));
            }
            let idx = idx_ty.read_index(&bytes[offset..]);
            offset += idx_ty.size();
            if idx < 0 {
                return Err(Error::parse(path, 0, format!("face {fi}: negative index")));
            }
            *slot = idx as usize;
        }
        faces.push(face);
    }

    Ok(TriangleMesh::new_unchecked(vertices, faces, None))
}

pub(super) fn save_ply(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    let header = format!(
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\nelement face {}\nproperty list uchar int vertex_indices\nend_header\n",
        mesh.vertex_count(),
        mesh.face_count()
    );
    buf.extend_from_slice(header.as_bytes());
    for v in mesh.vertices() {
        for c in v {
            buf.extend_from_slice(&c.to_le_bytes());
        }
    }
    for f in mesh.faces() {
        buf.push(3u8);
        for &i in f {
            buf.extend_from_slice(&(i as i32).to_le_bytes());
        }
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use crate::mesh::{MeshFormat, TriangleMesh};

    #[test]
    fn binary_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.ply");
        let mesh = crate::synthetic::icosphere(2);
        mesh.save(&path, MeshFormat::Ply).unwrap();
        let back = TriangleMesh::load(&path, MeshFormat::Ply).unwrap();
        assert_eq!(mesh.vertices(), back.vertices());
        assert_eq!(mesh.faces(), back.faces());
    }

    #[test]
    fn rejects_ascii_ply() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.ply");
        std::fs::write(
            &path,
            "ply\nformat ascii 1.0\nelement vertex 0\nelement face 0\nend_header\n",
        )
        .unwrap();
        assert!(TriangleMesh::load(&path, MeshFormat::Ply).is_err());
    }
}
