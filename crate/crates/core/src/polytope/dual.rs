use std::collections::BTreeSet;

use nalgebra::Point3;

use super::vertex_set::{edge, DiameterGraph, Edge, VertexSet};
use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::spherical::{self, PairLengths};

/// Geometry of one dual pair, computed from vertex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPairGeometry {
    pub theta: f64,
    pub theta_dual: f64,
    /// Dihedral angle at `e` in the tetrahedron spanned by the pair.
    pub phi: f64,
    pub phi_dual: f64,
    pub alpha: f64,
    /// Distance between the midpoints of `e` and `e'`.
    pub d_mid: f64,
    /// Arc of `e` on the circle `dB(x') ∩ dB(y')`.
    pub arc_e: Arc,
    /// Arc of `e'` on the circle `dB(x) ∩ dB(y)`.
    pub arc_dual: Arc,
}

impl DualPairGeometry {
    /// Chords are clamped to 1, so near-unit distances within the caller's
    /// tolerance are accepted.
    pub fn from_points(points: &[Point3<f64>], e: Edge, e_dual: Edge) -> Result<Self> {
        let (x, y) = (&points[e.0], &points[e.1]);
        let (xd, yd) = (&points[e_dual.0], &points[e_dual.1]);
        let theta = spherical::chord_to_arc((x - y).norm().min(1.0))?;
        let theta_dual = spherical::chord_to_arc((xd - yd).norm().min(1.0))?;
        let lengths = PairLengths::new(theta, theta_dual)?;
        Ok(Self {
            theta,
            theta_dual,
            phi: spherical::dihedral_angle(lengths)?,
            phi_dual: spherical::dihedral_angle(lengths.swapped())?,
            alpha: spherical::wedge_angle(lengths)?,
            d_mid: spherical::midpoint_distance(lengths)?,
            arc_e: Arc::edge_arc(x, y, xd, yd),
            arc_dual: Arc::edge_arc(xd, yd, x, y),
        })
    }

    pub fn lengths(&self) -> PairLengths {
        PairLengths {
            theta: self.theta,
            theta_dual: self.theta_dual,
        }
    }
}

/// A pair of dual edges: the four cross distances between their endpoints
/// are all one.
#[derive(Debug, Clone, PartialEq)]
pub struct DualEdgePair {
    pub e: Edge,
    pub e_dual: Edge,
    pub geometry: DualPairGeometry,
}

/// Enumerates the 4-cycles `x - x' - y - y'` of the diameter graph and
/// returns their diagonal pairs `((x, y), (x', y'))`, lexicographically
/// smaller edge first. Exactly `m - 1` pairs are required.
pub fn dual_pair_indices(g: &DiameterGraph) -> Result<Vec<(Edge, Edge)>> {
    let m = g.vertex_count();
    let mut found = BTreeSet::new();
    for x in 0..m {
        for y in x + 1..m {
            let common: Vec<usize> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&c| c != y && g.has_edge(y, c))
                .collect();
            for (i, &a) in common.iter().enumerate() {
                for &b in &common[i + 1..] {
                    let (p, q) = ((x, y), edge(a, b));
                    found.insert(if p <= q { (p, q) } else { (q, p) });
                }
            }
        }
    }
    let expected = m.saturating_sub(1);
    if found.len() != expected {
        return Err(Error::WrongPairCount {
            found: found.len(),
            expected,
        });
    }
    Ok(found.into_iter().collect())
}

pub fn find_dual_pairs(g: &DiameterGraph, vs: &VertexSet) -> Result<Vec<DualEdgePair>> {
    dual_pair_indices(g)?
        .into_iter()
        .map(|(e, e_dual)| {
            Ok(DualEdgePair {
                e,
                e_dual,
                geometry: DualPairGeometry::from_points(vs.points(), e, e_dual)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{regular_pyramid, regular_tetrahedron};
    use crate::polytope::build_diameter_graph;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_3;

    fn pairs_of(vs: &VertexSet) -> Vec<DualEdgePair> {
        let g = build_diameter_graph(vs).unwrap();
        find_dual_pairs(&g, vs).unwrap()
    }

    #[test]
    fn tetrahedron_has_three_opposite_pairs() {
        let pairs = pairs_of(&regular_tetrahedron());
        let idx: Vec<_> = pairs.iter().map(|p| (p.e, p.e_dual)).collect();
        assert_eq!(
            idx,
            vec![((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        );
        for p in &pairs {
            assert_abs_diff_eq!(p.geometry.theta, FRAC_PI_3, epsilon = 1e-12);
            assert_abs_diff_eq!(p.geometry.theta_dual, FRAC_PI_3, epsilon = 1e-12);
        }
    }

    #[test]
    fn pyramid_pairs_match_base_with_apex_edges() {
        for k in 2..=3 {
            let vs = regular_pyramid(k).unwrap();
            let pairs = pairs_of(&vs);
            assert_eq!(pairs.len(), vs.len() - 1);
            for p in &pairs {
                // Apex is vertex 0: exactly one edge of each pair contains it.
                assert!((p.e.0 == 0) ^ (p.e_dual.0 == 0));
                let (apex_edge, base_edge) = if p.e.0 == 0 { (p.e, p.e_dual) } else { (p.e_dual, p.e) };
                let n = vs.len() - 1;
                let (a, b) = (base_edge.0 - 1, base_edge.1 - 1);
                assert!(b == a + 1 || (a == 0 && b == n - 1), "base edge {base_edge:?}");
                assert!(apex_edge.1 >= 1);
                let theta_apex = if p.e.0 == 0 { p.geometry.theta } else { p.geometry.theta_dual };
                assert_abs_diff_eq!(theta_apex, FRAC_PI_3, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn missing_diameter_breaks_pair_count() {
        let g = DiameterGraph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(
            dual_pair_indices(&g),
            Err(Error::WrongPairCount { found: 1, expected: 3 })
        );
    }

    /// Coordinate measurements agree with the closed-form pair geometry.
    #[test]
    fn geometry_matches_coordinates() {
        for vs in [regular_tetrahedron(), regular_pyramid(2).unwrap(), regular_pyramid(3).unwrap()] {
            let pts = vs.points();
            for p in pairs_of(&vs) {
                let g = &p.geometry;
                let mid_e = nalgebra::center(&pts[p.e.0], &pts[p.e.1]);
                let mid_d = nalgebra::center(&pts[p.e_dual.0], &pts[p.e_dual.1]);
                assert_abs_diff_eq!((mid_e - mid_d).norm(), g.d_mid, epsilon = 1e-12);

                assert_abs_diff_eq!(g.arc_e.sweep(), g.phi_dual, epsilon = 1e-12);
                assert_abs_diff_eq!(g.arc_dual.sweep(), g.phi, epsilon = 1e-12);
                assert_abs_diff_eq!(g.arc_e.radius, (g.theta_dual / 2.0).cos(), epsilon = 1e-12);

                // Dihedral angle at e from the face normals of the tetrahedron.
                let (x, y) = (pts[p.e.0], pts[p.e.1]);
                let axis = (y - x).normalize();
                let perp = |q: Point3<f64>| {
                    let w = q - x;
                    (w - axis * axis.dot(&w)).normalize()
                };
                let phi = perp(pts[p.e_dual.0]).dot(&perp(pts[p.e_dual.1])).clamp(-1.0, 1.0).acos();
                assert_abs_diff_eq!(phi, g.phi, epsilon = 1e-10);
            }
        }
    }
}
