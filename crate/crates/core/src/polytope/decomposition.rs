use std::f64::consts::{PI, TAU};

use nalgebra::{Point3, Vector3};

use super::meissner::MeissnerPolyhedron;
use super::vertex_set::{DiameterGraph, Edge};
use crate::arc::any_orthogonal;
use crate::error::{Error, Result};
use crate::spherical;

/// What a surface patch is made of.
#[derive(Debug, Clone, PartialEq)]
pub enum PatchKind {
    /// Geodesic polygon on the unit sphere about `vertex`, with corners at
    /// `cycle` (the graph neighbors of `vertex`, cyclically ordered).
    Face { vertex: usize, cycle: Vec<usize> },
    /// Wedge around the retained edge of dual pair `pair`.
    Wedge { pair: usize, edge: Edge },
    /// Spindle replacing the smoothed edge of dual pair `pair`.
    Spindle { pair: usize, edge: Edge },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePatch {
    pub kind: PatchKind,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurfaceDecomposition {
    pub patches: Vec<SurfacePatch>,
}

impl SurfaceDecomposition {
    pub fn total(&self) -> f64 {
        self.patches.iter().map(|p| p.area).sum()
    }

    pub fn face_total(&self) -> f64 {
        self.sum_where(|k| matches!(k, PatchKind::Face { .. }))
    }

    pub fn wedge_total(&self) -> f64 {
        self.sum_where(|k| matches!(k, PatchKind::Wedge { .. }))
    }

    pub fn spindle_total(&self) -> f64 {
        self.sum_where(|k| matches!(k, PatchKind::Spindle { .. }))
    }

    /// Numbers of face, wedge and spindle patches.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for p in &self.patches {
            match p.kind {
                PatchKind::Face { .. } => c.0 += 1,
                PatchKind::Wedge { .. } => c.1 += 1,
                PatchKind::Spindle { .. } => c.2 += 1,
            }
        }
        c
    }

    fn sum_where(&self, pred: impl Fn(&PatchKind) -> bool) -> f64 {
        self.patches.iter().filter(|p| pred(&p.kind)).map(|p| p.area).sum()
    }
}

/// Neighbors of `x`, ordered by angle about the axis from `x` through their
/// centroid.
pub fn face_cycle(points: &[Point3<f64>], graph: &DiameterGraph, x: usize) -> Result<Vec<usize>> {
    let nbrs = graph.neighbors(x);
    let fail = |reason: String| Error::FaceCycle { vertex: x, reason };
    if nbrs.len() < 3 {
        return Err(fail(format!("only {} neighbors", nbrs.len())));
    }
    let centroid = nbrs.iter().map(|&j| points[j].coords).sum::<Vector3<f64>>() / nbrs.len() as f64;
    let axis = centroid - points[x].coords;
    if axis.norm() < 1e-12 {
        return Err(fail("neighbors are centered on the vertex".into()));
    }
    let axis = axis.normalize();
    let u = any_orthogonal(&axis);
    let v = axis.cross(&u);
    let mut keyed = Vec::with_capacity(nbrs.len());
    for &j in nbrs {
        let w = points[j] - points[x];
        let (a, b) = (w.dot(&u), w.dot(&v));
        if a.hypot(b) < 1e-12 {
            return Err(fail(format!("neighbor {j} lies on the axis")));
        }
        keyed.push((b.atan2(a), j));
    }
    keyed.sort_by(|p, q| p.0.total_cmp(&q.0));
    for i in 0..keyed.len() {
        let next = keyed[(i + 1) % keyed.len()].0 + if i + 1 == keyed.len() { TAU } else { 0.0 };
        if next - keyed[i].0 < 1e-12 {
            return Err(fail(format!(
                "neighbors {} and {} share a direction",
                keyed[i].1,
                keyed[(i + 1) % keyed.len()].1
            )));
        }
    }
    Ok(keyed.into_iter().map(|(_, j)| j).collect())
}

/// Unit tangent at `p` of the great circle from `p` towards `q`, both on the
/// unit sphere about `c`.
fn geodesic_tangent(c: &Point3<f64>, p: &Point3<f64>, q: &Point3<f64>) -> Vector3<f64> {
    let (pp, qq) = ((p - c).normalize(), (q - c).normalize());
    (qq - pp * pp.dot(&qq)).normalize()
}

/// Interior angles of the geodesic polygon on the unit sphere about `c`
/// through `corners` in order.
pub fn face_angles(c: &Point3<f64>, corners: &[Point3<f64>]) -> Vec<f64> {
    let k = corners.len();
    (0..k)
        .map(|i| {
            let p = &corners[i];
            let prev = &corners[(i + k - 1) % k];
            let next = &corners[(i + 1) % k];
            let t1 = geodesic_tangent(c, p, prev);
            let t2 = geodesic_tangent(c, p, next);
            t1.dot(&t2).clamp(-1.0, 1.0).acos()
        })
        .collect()
}

/// Face patches of the vertices of `graph`.
pub fn face_patches(points: &[Point3<f64>], graph: &DiameterGraph) -> Result<Vec<SurfacePatch>> {
    (0..points.len())
        .map(|x| {
            let cycle = face_cycle(points, graph, x)?;
            let corners: Vec<_> = cycle.iter().map(|&j| points[j]).collect();
            let area = spherical::geodesic_polygon_area(&face_angles(&points[x], &corners))?;
            debug_assert!(area < PI);
            Ok(SurfacePatch {
                kind: PatchKind::Face { vertex: x, cycle },
                area,
            })
        })
        .collect()
}

/// Faces, then one wedge and one spindle per dual pair.
pub fn surface_decomposition(m: &MeissnerPolyhedron) -> Result<SurfaceDecomposition> {
    let mut patches = face_patches(m.vertices().points(), m.graph())?;
    for (i, o) in m.oriented().enumerate() {
        patches.push(SurfacePatch {
            kind: PatchKind::Wedge {
                pair: i,
                edge: o.retained,
            },
            area: spherical::wedge_area(o.lengths)?,
        });
        patches.push(SurfacePatch {
            kind: PatchKind::Spindle {
                pair: i,
                edge: o.smoothed,
            },
            area: spherical::spindle_area(o.lengths.theta_dual, o.phi_smoothed),
        });
    }
    Ok(SurfaceDecomposition { patches })
}

/// Faces plus both wedges of every dual pair: the surface of the Reuleaux
/// polyhedron.
pub fn reuleaux_decomposition(m: &MeissnerPolyhedron) -> Result<SurfaceDecomposition> {
    let mut patches = face_patches(m.vertices().points(), m.graph())?;
    for (i, p) in m.pairs().iter().enumerate() {
        let lengths = p.geometry.lengths();
        for (edge, l) in [(p.e, lengths), (p.e_dual, lengths.swapped())] {
            patches.push(SurfacePatch {
                kind: PatchKind::Wedge { pair: i, edge },
                area: spherical::wedge_area(l)?,
            });
        }
    }
    Ok(SurfaceDecomposition { patches })
}

/// `Σ faces + Σ rect_area(θ, θ')`, which equals `2π`.
pub fn partition_sum(m: &MeissnerPolyhedron) -> Result<f64> {
    let faces: f64 = face_patches(m.vertices().points(), m.graph())?
        .iter()
        .map(|p| p.area)
        .sum();
    let rects = m
        .pairs()
        .iter()
        .map(|p| spherical::rect_area(p.geometry.theta, p.geometry.theta_dual))
        .sum::<Result<f64>>()?;
    Ok(faces + rects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{regular_pyramid, regular_tetrahedron};
    use crate::polytope::reuleaux_area;
    use approx::assert_abs_diff_eq;

    const TETRA_FACE: f64 = 0.551_285_598_432_530_8;

    #[test]
    fn tetrahedron_patches() {
        let m = MeissnerPolyhedron::with_optimal_smoothing(regular_tetrahedron()).unwrap();
        let d = surface_decomposition(&m).unwrap();
        assert_eq!(d.counts(), (4, 3, 3));
        for p in &d.patches {
            if let PatchKind::Face { cycle, .. } = &p.kind {
                assert_eq!(cycle.len(), 3);
                assert_abs_diff_eq!(p.area, TETRA_FACE, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(d.total(), m.area(), epsilon = 1e-12);
    }

    #[test]
    fn partition_and_totals_on_pyramids() {
        for vs in [regular_tetrahedron(), regular_pyramid(2).unwrap(), regular_pyramid(3).unwrap()] {
            let n = vs.len();
            let m = MeissnerPolyhedron::with_optimal_smoothing(vs).unwrap();
            assert_abs_diff_eq!(partition_sum(&m).unwrap(), TAU, epsilon = 1e-9);
            let d = surface_decomposition(&m).unwrap();
            assert_eq!(d.counts(), (n, n - 1, n - 1));
            assert_abs_diff_eq!(d.total(), m.area(), epsilon = 1e-9);
            let r = reuleaux_decomposition(&m).unwrap();
            assert_abs_diff_eq!(r.total(), reuleaux_area(m.pairs()), epsilon = 1e-9);
        }
    }

    #[test]
    fn apex_cycle_follows_base_order() {
        let vs = regular_pyramid(3).unwrap();
        let m = MeissnerPolyhedron::with_optimal_smoothing(vs).unwrap();
        let cycle = face_cycle(m.vertices().points(), m.graph(), 0).unwrap();
        let n = cycle.len();
        assert_eq!(n, 7);
        for i in 0..n {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            let step = (b + n - a) % n;
            assert!(step == 1 || step == n - 1, "cycle {cycle:?}");
        }
    }

    #[test]
    fn degree_two_vertex_has_no_face() {
        let pts = regular_tetrahedron().into_points();
        let g = DiameterGraph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(face_cycle(&pts, &g, 0), Err(Error::FaceCycle { vertex: 0, .. })));
    }
}
