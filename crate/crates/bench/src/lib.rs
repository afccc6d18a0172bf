//! Shared fixtures for the benchmarks.

use meissner_core::{regular_pyramid, regular_tetrahedron, MeissnerPolyhedron};

/// Tetrahedron and two regular pyramids with optimal smoothing.
pub fn fixtures() -> Vec<(String, MeissnerPolyhedron)> {
    let mut out = vec![(
        "tetrahedron".to_string(),
        MeissnerPolyhedron::with_optimal_smoothing(regular_tetrahedron()).expect("tetrahedron is valid"),
    )];
    for k in [2, 5] {
        let vs = regular_pyramid(k).expect("pyramid is valid");
        let m = MeissnerPolyhedron::with_optimal_smoothing(vs).expect("pyramid is valid");
        out.push((format!("pyramid_{}", 2 * k + 1), m));
    }
    out
}
