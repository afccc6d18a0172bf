//! Reuleaux and Meissner polyhedra built from extremal diameter-one sets.

mod decomposition;
mod dual;
mod meissner;
mod report;
mod vertex_set;

pub use decomposition::{
    face_angles, face_cycle, face_patches, partition_sum, reuleaux_decomposition, surface_decomposition,
    PatchKind, SurfaceDecomposition, SurfacePatch,
};
pub use dual::{dual_pair_indices, find_dual_pairs, DualEdgePair, DualPairGeometry};
pub use meissner::{
    enumerate_smoothings, meissner_area, meissner_area_from_lengths, meissner_volume, min_area_choice,
    optimal_smoothing, reuleaux_area, volume_from_area, MeissnerPolyhedron, OrientedPair, SmoothingChoice,
    ENUMERATION_LIMIT,
};
pub use report::{write_report, REPORT_HEADER};
pub use vertex_set::{build_diameter_graph, validate_vertex_set, DiameterGraph, Edge, VertexSet, DEFAULT_TOL};

pub(crate) use vertex_set::edge;
