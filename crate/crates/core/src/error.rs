//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// First invariant violation found while validating a mesh, in face order.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshDefect {
    #[error("mesh has no vertices")]
    EmptyVertices,
    #[error("face {face}: vertex index {index} out of range (n = {n})")]
    IndexOutOfRange { face: usize, index: i64, n: usize },
    #[error("face {face}: repeated vertex index {index}")]
    RepeatedIndex { face: usize, index: usize },
    #[error("face {face}: degenerate (area {area:.3e} <= 1e-12)")]
    DegenerateFace { face: usize, area: f64 },
    #[error("landmark {slot}: vertex index {index} out of range (n = {n})")]
    LandmarkOutOfRange { slot: usize, index: usize, n: usize },
    #[error("landmark {slot}: duplicate vertex index {index}")]
    DuplicateLandmark { slot: usize, index: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("invalid mesh: {0}")]
    InvalidMesh(MeshDefect),

    #[error("frame sequence: {0}")]
    InvalidSequence(String),

    #[error("mesh is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("non-manifold edge ({a}, {b}) shared by {faces} faces")]
    NonManifoldEdge { a: usize, b: usize, faces: usize },

    #[error("{what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        actual: usize,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("reference bank: {0}")]
    Bank(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn dims(what: impl Into<String>, expected: usize, actual: usize) -> Self {
        Error::DimensionMismatch {
            what: what.into(),
            expected,
            actual,
        }
    }
}
