//! Meissner and Reuleaux polyhedra: closed-form surface areas and volumes,
//! a Monte Carlo ball-intersection oracle, generators, optimization and mesh
//! export.

pub mod arc;
pub mod error;
pub mod generators;
pub mod mesh;
pub mod optimizer;
pub mod oracle;
pub mod polytope;
pub mod spherical;

pub use arc::Arc;
pub use error::{Error, Result};
pub use generators::{load_vertex_file, regular_pyramid, regular_tetrahedron, save_vertex_file};
pub use polytope::{
    build_diameter_graph, enumerate_smoothings, find_dual_pairs, meissner_area, meissner_volume, optimal_smoothing,
    reuleaux_area, surface_decomposition, validate_vertex_set, DiameterGraph, DualEdgePair, DualPairGeometry,
    MeissnerPolyhedron, SmoothingChoice, VertexSet, DEFAULT_TOL,
};
pub use spherical::PairLengths;

pub use nalgebra::{Point3, Vector3};
