//! Triangle-mesh representation, validation and file I/O.
//!
//! [`TriangleMesh`] is the geometric substrate used by every other module.
//! Meshes are immutable after construction and safe to share across threads.

mod obj;
mod ply;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, MeshDefect, Result};

/// Faces with area at or below this (model units squared) are rejected.
pub const MIN_FACE_AREA: f64 = 1e-12;

/// Mesh interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    /// Text OBJ, `v x y z` / `f i j k` records, 1-based on disk.
    Obj,
    /// Binary little-endian PLY 1.0 with float64 vertex properties.
    Ply,
}

impl MeshFormat {
    /// Infer from a file extension (case-insensitive).
    pub fn from_path(path: &Path) -> Option<Self> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("obj") => Some(MeshFormat::Obj),
            Some("ply") => Some(MeshFormat::Ply),
            _ => None,
        }
    }
}

/// A triangle mesh: vertex positions, face connectivity and optional
/// landmark vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
    landmark_indices: Option<Vec<usize>>,
}

impl TriangleMesh {
    /// Build a validated mesh. Reports the first invariant violation in face
    /// order.
    pub fn new(
        vertices: Vec<[f64; 3]>,
        faces: Vec<[usize; 3]>,
        landmark_indices: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mesh = Self {
            vertices,
            faces,
            landmark_indices,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    /// Build without validation. Needed where positions may legitimately be
    /// degenerate (decoded maps, raw model evaluations); call [`validate`]
    /// before relying on the invariants.
    ///
    /// [`validate`]: TriangleMesh::validate
    pub fn new_unchecked(
        vertices: Vec<[f64; 3]>,
        faces: Vec<[usize; 3]>,
        landmark_indices: Option<Vec<usize>>,
    ) -> Self {
        Self {
            vertices,
            faces,
            landmark_indices,
        }
    }

    /// Check all mesh invariants, reporting the first offender in face order.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::InvalidMesh(MeshDefect::EmptyVertices));
        }
        for (fi, f) in self.faces.iter().enumerate() {
            for &v in f {
                if v >= n {
                    return Err(Error::InvalidMesh(MeshDefect::IndexOutOfRange {
                        face: fi,
                        index: v as i64,
                        n,
                    }));
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                let index = if f[0] == f[1] || f[0] == f[2] {
                    f[0]
                } else {
                    f[1]
                };
                return Err(Error::InvalidMesh(MeshDefect::RepeatedIndex {
                    face: fi,
                    index,
                }));
            }
            let area = self.face_area(fi);
            if !(area > MIN_FACE_AREA) {
                return Err(Error::InvalidMesh(MeshDefect::DegenerateFace {
                    face: fi,
                    area,
                }));
            }
        }
        if let Some(lms) = &self.landmark_indices {
            let mut seen = vec![false; n];
            for (slot, &idx) in lms.iter().enumerate() {
                if idx >= n {
                    return Err(Error::InvalidMesh(MeshDefect::LandmarkOutOfRange {
                        slot,
                        index: idx,
                        n,
                    }));
                }
                if seen[idx] {
                    return Err(Error::InvalidMesh(MeshDefect::DuplicateLandmark {
                        slot,
                        index: idx,
                    }));
                }
                seen[idx] = true;
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn landmark_indices(&self) -> Option<&[usize]> {
        self.landmark_indices.as_deref()
    }

    /// Same connectivity, new vertex positions.
    pub fn with_vertices(&self, vertices: Vec<[f64; 3]>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::dims(
                "vertex count",
                self.vertices.len(),
                vertices.len(),
            ));
        }
        Ok(Self {
            vertices,
            faces: self.faces.clone(),
            landmark_indices: self.landmark_indices.clone(),
        })
    }

    /// Replace the landmark index list.
    pub fn with_landmarks(mut self, landmarks: Option<Vec<usize>>) -> Result<Self> {
        self.landmark_indices = landmarks;
        self.validate()?;
        Ok(self)
    }

    pub fn face_area(&self, face: usize) -> f64 {
        let [i, j, k] = self.faces[face];
        let a = self.vertices[i];
        let b = self.vertices[j];
        let c = self.vertices[k];
        let u = sub(b, a);
        let v = sub(c, a);
        0.5 * norm(cross(u, v))
    }

    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    /// Axis-aligned bounding box as (min, max) corners.
    pub fn bbox(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for a in 0..3 {
                lo[a] = lo[a].min(v[a]);
                hi[a] = hi[a].max(v[a]);
            }
        }
        (lo, hi)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bbox();
        norm(sub(hi, lo))
    }

    /// Unique undirected edges with the number of faces sharing each.
    pub fn edge_face_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut edges = BTreeMap::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                let key = if a < b { (a, b) } else { (b, a) };
                *edges.entry(key).or_insert(0) += 1;
            }
        }
        edges
    }

    pub fn mean_edge_length(&self) -> f64 {
        let edges = self.edge_face_counts();
        if edges.is_empty() {
            return 0.0;
        }
        let total: f64 = edges
            .keys()
            .map(|&(a, b)| norm(sub(self.vertices[b], self.vertices[a])))
            .sum();
        total / edges.len() as f64
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edge_face_counts()
            .keys()
            .map(|&(a, b)| norm(sub(self.vertices[b], self.vertices[a])))
            .fold(f64::INFINITY, f64::min)
    }

    /// First edge shared by more than two faces, if any.
    pub fn non_manifold_edge(&self) -> Option<(usize, usize, usize)> {
        self.edge_face_counts()
            .into_iter()
            .find(|&(_, count)| count > 2)
            .map(|((a, b), count)| (a, b, count))
    }

    pub fn is_edge_manifold(&self) -> bool {
        self.non_manifold_edge().is_none()
    }

    /// Number of connected components of the face-induced vertex graph.
    /// Isolated vertices each count as their own component.
    pub fn connected_components(&self) -> usize {
        let n = self.vertices.len();
        let adj = self.vertex_adjacency();
        let mut seen = vec![false; n];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    /// Per-vertex neighbor lists, sorted ascending. The relation is
    /// symmetric: `j in adj[i]` iff `i in adj[j]`.
    pub fn vertex_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in self.edge_face_counts().keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        // BTreeMap iteration inserts neighbors of `a` in ascending `b`, but
        // neighbors of `b` arrive out of order; sort both for a stable
        // contract.
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Load a mesh (and its `.lmk` landmark sidecar, if present).
    pub fn load(path: &Path, format: MeshFormat) -> Result<Self> {
        let mut mesh = match format {
            MeshFormat::Obj => obj::load_obj(path)?,
            MeshFormat::Ply => ply::load_ply(path)?,
        };
        let lmk = sidecar_path(path);
        if lmk.exists() {
            mesh.landmark_indices = Some(load_landmarks(&lmk)?);
        }
        mesh.validate()?;
        Ok(mesh)
    }

    /// Save a mesh; landmarks, if present, go to a `.lmk` sidecar next to it.
    pub fn save(&self, path: &Path, format: MeshFormat) -> Result<()> {
        self.validate()?;
        match format {
            MeshFormat::Obj => obj::save_obj(self, path)?,
            MeshFormat::Ply => ply::save_ply(self, path)?,
        }
        if let Some(lms) = &self.landmark_indices {
            save_landmarks(&sidecar_path(path), lms)?;
        }
        Ok(())
    }
}

/// Sidecar landmark file path: same stem, extension `.lmk`.
pub fn sidecar_path(mesh_path: &Path) -> std::path::PathBuf {
    mesh_path.with_extension("lmk")
}

/// Plain-text landmark file: one 0-based vertex index per line.
pub fn load_landmarks(path: &Path) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let idx: usize = line
            .parse()
            .map_err(|_| Error::parse(path, lineno + 1, format!("bad landmark index {line:?}")))?;
        out.push(idx);
    }
    Ok(out)
}

pub fn save_landmarks(path: &Path, landmarks: &[usize]) -> Result<()> {
    let mut text = String::new();
    for idx in landmarks {
        text.push_str(&idx.to_string());
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// An ordered run of meshes sharing one connectivity, with a frame rate.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    frames: Vec<TriangleMesh>,
    fps: f64,
}

impl FrameSequence {
    pub fn new(frames: Vec<TriangleMesh>, fps: f64) -> Result<Self> {
        if !(fps > 0.0) {
            return Err(Error::InvalidSequence(format!("fps must be > 0, got {fps}")));
        }
        if frames.is_empty() {
            return Err(Error::InvalidSequence("no frames".into()));
        }
        let first = &frames[0];
        for (i, f) in frames.iter().enumerate().skip(1) {
            if f.vertex_count() != first.vertex_count() {
                return Err(Error::InvalidSequence(format!(
                    "frame {i} has {} vertices, frame 0 has {}",
                    f.vertex_count(),
                    first.vertex_count()
                )));
            }
            if f.faces() != first.faces() {
                return Err(Error::InvalidSequence(format!(
                    "frame {i} connectivity differs from frame 0"
                )));
            }
        }
        Ok(Self { frames, fps })
    }

    pub fn frames(&self) -> &[TriangleMesh] {
        &self.frames
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn duration_seconds(&self) -> f64 {
        self.frames.len() as f64 / self.fps
    }
}

/// Discrete emotion domain label.
///
/// The source material uses "neutral" and "calm" interchangeably; both parse
/// to [`EmotionLabel::Neutral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionLabel {
    Neutral,
    Happy,
    Angry,
    Surprise,
}

impl EmotionLabel {
    pub const ALL: [EmotionLabel; 4] = [
        EmotionLabel::Neutral,
        EmotionLabel::Happy,
        EmotionLabel::Angry,
        EmotionLabel::Surprise,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EmotionLabel::Neutral => "neutral",
            EmotionLabel::Happy => "happy",
            EmotionLabel::Angry => "angry",
            EmotionLabel::Surprise => "surprise",
        }
    }
}

impl fmt::Display for EmotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmotionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "neutral" | "calm" => Ok(EmotionLabel::Neutral),
            "happy" => Ok(EmotionLabel::Happy),
            "angry" => Ok(EmotionLabel::Angry),
            "surprise" => Ok(EmotionLabel::Surprise),
            other => Err(Error::InvalidArgument(format!(
                "unknown emotion label {other:?} (expected neutral|happy|angry|surprise)"
            ))),
        }
    }
}

#[inline]
pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub(crate) fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> TriangleMesh {
        TriangleMesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 2]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_triangle_adjacency() {
        let adj = triangle().vertex_adjacency();
        assert_eq!(adj, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn tetrahedron_adjacency() {
        let mesh = TriangleMesh::new(
            vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
            ],
            vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]],
            None,
        )
        .unwrap();
        for list in mesh.vertex_adjacency() {
            assert_eq!(list.len(), 3);
        }
        assert!(mesh.is_edge_manifold());
        assert_eq!(mesh.connected_components(), 1);
    }

    #[test]
    fn adjacency_matches_edge_enumeration() {
        let mesh = crate::synthetic::icosphere(1);
        let adj = mesh.vertex_adjacency();
        let edges = mesh.edge_face_counts();
        let degree_from_edges = {
            let mut d = vec![0usize; mesh.vertex_count()];
            for &(a, b) in edges.keys() {
                d[a] += 1;
                d[b] += 1;
            }
            d
        };
        for (v, list) in adj.iter().enumerate() {
            assert_eq!(list.len(), degree_from_edges[v]);
            for &w in list {
                assert!(adj[w].binary_search(&v).is_ok(), "asymmetric {v}-{w}");
            }
        }
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = TriangleMesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 3]],
            None,
        )
        .unwrap_err();
        match err {
            Error::InvalidMesh(MeshDefect::IndexOutOfRange { face: 0, index, n }) => {
                assert_eq!((index, n), (3, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_repeated_index_first_in_face_order() {
        let err = TriangleMesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 2], [1, 1, 2], [2, 2, 2]],
            None,
        )
        .unwrap_err();
        match err {
            Error::InvalidMesh(MeshDefect::RepeatedIndex { face, .. }) => assert_eq!(face, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_degenerate_face() {
        let err = TriangleMesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]],
            vec![[0, 1, 2]],
            None,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidMesh(MeshDefect::DegenerateFace { face: 0, .. })
        ));
    }

    #[test]
    fn rejects_empty_mesh() {
        let err = TriangleMesh::new(vec![], vec![], None).unwrap_err();
        assert!(matches!(err, Error::InvalidMesh(MeshDefect::EmptyVertices)));
    }

    #[test]
    fn rejects_duplicate_landmark() {
        let err = triangle().with_landmarks(Some(vec![0, 2, 0])).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidMesh(MeshDefect::DuplicateLandmark { slot: 2, index: 0 })
        ));
    }

    #[test]
    fn frame_sequence_rejects_mixed_connectivity() {
        let a = triangle();
        let b = TriangleMesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 2, 1]],
            None,
        )
        .unwrap();
        assert!(FrameSequence::new(vec![a.clone(), b], 60.0).is_err());
        assert!(FrameSequence::new(vec![a.clone(), a.clone()], 0.0).is_err());
        let seq = FrameSequence::new(vec![a.clone(), a], 60.0).unwrap();
        assert_eq!(seq.duration_seconds(), 2.0 / 60.0);
    }

    #[test]
    fn emotion_label_round_trip() {
        for label in EmotionLabel::ALL {
            assert_eq!(label.as_str().parse::<EmotionLabel>().unwrap(), label);
        }
        assert_eq!("calm".parse::<EmotionLabel>().unwrap(), EmotionLabel::Neutral);
        assert!("bored".parse::<EmotionLabel>().is_err());
    }
}
