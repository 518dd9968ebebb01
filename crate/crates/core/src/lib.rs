//! Geometry-processing core for audio-driven 3D emotional talking heads.
//!
//! The crate covers the non-neural parts of the pipeline:
//!
//! - [`mesh`] — triangle-mesh representation, validation and OBJ/PLY I/O
//! - [`geodesics`] — vertex-to-vertex geodesic distances via the heat method
//! - [`mds`] — classical multidimensional scaling of a distance matrix to 2D
//! - [`geometry_map`] — rasterizing a mesh onto the canonical MDS grid
//!   ("geometry map") and decoding a map back to a mesh
//! - [`morphable`] — bilinear morphable-model evaluation and landmark-based
//!   reconstruction under a scaled orthographic camera
//! - [`emotion`] — region-weighted emotion displacement transfer from a
//!   reference exemplar bank
//! - [`audio`] — speech-feature upsampling and overlapping-window assembly
//! - [`losses`] — training objectives and the RE/VE/CE evaluation metrics as
//!   pure functions
//! - [`synthetic`] — deterministic generators for test meshes, a small
//!   bilinear model and a toy reference bank

pub mod align;
pub mod audio;
mod binio;
pub mod emotion;
pub mod error;
pub mod geodesics;
pub mod geometry_map;
pub mod losses;
pub mod mds;
pub mod mesh;
pub mod morphable;
pub mod synthetic;

pub use audio::{FeatureMatrix, FeatureWindowTensor};
pub use emotion::{ReferenceBank, RefExpression, RegionWeightField};
pub use error::{Error, MeshDefect, Result};
pub use geodesics::{DistanceMatrix, HeatSolverContext};
pub use geometry_map::{GeometryMap, TemplateAtlas};
pub use losses::{BatchPredictions, LossWeights, VertexWeightMask};
pub use mds::PlanarEmbedding;
pub use mesh::{EmotionLabel, FrameSequence, MeshFormat, TriangleMesh};
pub use morphable::{
    BilinearFaceModel, ExpressionWeights, IdentityWeights, Landmarks2D, PoseSOP,
};
