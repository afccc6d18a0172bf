//! Area minimization over vertex coordinates at fixed diameter-graph
//! combinatorics, by quadratic-penalty Nelder-Mead with feasibility
//! restoration after every penalty round.

pub mod nelder_mead;

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Point3, Rotation3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::regular_pyramid;
use crate::polytope::{
    dual_pair_indices, face_cycle, validate_vertex_set, volume_from_area, DiameterGraph, Edge, VertexSet, DEFAULT_TOL,
};
use crate::spherical::{self, f_value, PairLengths};
use nelder_mead::{minimize, NelderMeadOptions};

/// Largest allowed residual of a reported configuration.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// Largest residual accepted for a starting configuration.
pub const START_TOL: f64 = 1e-6;
/// Area of the Meissner tetrahedron, `2π - (√3/2) π arccos(1/3)`.
pub const TETRAHEDRON_AREA: f64 = 2.934_115_194_323_356;

const PENALTY_START: f64 = 10.0;
const PENALTY_GROWTH: f64 = 10.0;
const RESTORE_ITERS: usize = 60;
const RESTORE_TARGET: f64 = 1e-13;
const PERTURB_ATTEMPTS: usize = 20;

/// Which coordinates are held fixed to remove rigid motions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// Vertex 0 at the origin, vertex 1 on the x axis, vertex 2 in the xy
    /// plane.
    General,
    /// Vertex 0 (the apex) pinned at the origin; the base moves freely on the
    /// unit sphere about it.
    Apex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerOptions {
    pub rounds: usize,
    /// Standard deviation of the coordinate noise for restarts after the
    /// first.
    pub perturbation: f64,
    pub nelder_mead: NelderMeadOptions,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            rounds: 8,
            perturbation: 0.05,
            nelder_mead: NelderMeadOptions::default(),
        }
    }
}

/// Maximize `Σ f` over vertex coordinates with the diameter graph held
/// fixed: unit distances on its edges, distances at most one elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationProblem {
    graph: DiameterGraph,
    non_edges: Vec<Edge>,
    pairs: Vec<(Edge, Edge)>,
    /// Edges of the ball polytope: both members of every dual pair.
    polytope_edges: Vec<Edge>,
    start: Vec<Point3<f64>>,
    gauge: Gauge,
    /// Indices into the flattened coordinates that are free.
    free: Vec<usize>,
    pub options: OptimizerOptions,
}

impl OptimizationProblem {
    /// The start is moved rigidly into the gauge; it must satisfy every
    /// constraint to within [`START_TOL`].
    pub fn new(graph: DiameterGraph, start: Vec<Point3<f64>>, gauge: Gauge) -> Result<Self> {
        let m = graph.vertex_count();
        if start.len() != m {
            return Err(Error::InvalidArgument(format!(
                "{} points for a graph on {m} vertices",
                start.len()
            )));
        }
        if m < 4 {
            return Err(Error::TooFewVertices(m));
        }
        let pairs = dual_pair_indices(&graph)?;
        let non_edges = graph.non_edges();
        let start = match gauge {
            Gauge::General => canonical_frame(&start)?,
            Gauge::Apex => start.iter().map(|p| Point3::from(p - start[0])).collect(),
        };
        let pinned: &[usize] = match gauge {
            Gauge::General => &[0, 1, 2, 4, 5, 8],
            Gauge::Apex => &[0, 1, 2],
        };
        let free = (0..3 * m).filter(|i| !pinned.contains(i)).collect();
        let mut polytope_edges: Vec<Edge> = pairs.iter().flat_map(|&(e, d)| [e, d]).collect();
        polytope_edges.sort_unstable();
        let problem = Self {
            graph,
            non_edges,
            pairs,
            polytope_edges,
            start,
            gauge,
            free,
            options: OptimizerOptions::default(),
        };
        let r = problem.residual(&problem.start);
        if r > START_TOL {
            return Err(Error::InfeasibleStart(format!(
                "constraint residual {r:.3e} exceeds {START_TOL:.0e}"
            )));
        }
        if !problem.consistent(&problem.start) {
            return Err(Error::InfeasibleStart(
                "faces of the start do not match its dual pairs".into(),
            ));
        }
        Ok(problem)
    }

    pub fn from_vertex_set(vs: &VertexSet, gauge: Gauge) -> Result<Self> {
        let graph = crate::polytope::build_diameter_graph(vs)?;
        Self::new(graph, vs.points().to_vec(), gauge)
    }

    pub fn graph(&self) -> &DiameterGraph {
        &self.graph
    }

    pub fn start(&self) -> &[Point3<f64>] {
        &self.start
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// `Σ f(retained, smoothed)` with the longer edge of every pair smoothed.
    pub fn objective(&self, points: &[Point3<f64>]) -> f64 {
        self.pairs
            .iter()
            .map(|&(e, d)| {
                let (x, y) = (edge_length(points, e), edge_length(points, d));
                f_value(x, y).max(f_value(y, x))
            })
            .sum()
    }

    /// Largest violation: `| |pi - pj| - 1 |` on edges, `|pi - pj| - 1` on
    /// non-edges.
    pub fn residual(&self, points: &[Point3<f64>]) -> f64 {
        let eq = self
            .graph
            .edges()
            .iter()
            .map(|&(i, j)| ((points[i] - points[j]).norm() - 1.0).abs());
        let ineq = self
            .non_edges
            .iter()
            .map(|&(i, j)| ((points[i] - points[j]).norm() - 1.0).max(0.0));
        eq.chain(ineq).fold(0.0, f64::max)
    }

    /// Whether the face of every vertex is a convex spherical polygon whose
    /// sides are polytope edges. Coordinates can satisfy every distance
    /// constraint while folding the faces over each other, and there the
    /// area formula no longer describes the body.
    pub fn consistent(&self, points: &[Point3<f64>]) -> bool {
        (0..points.len()).all(|x| {
            let Ok(cycle) = face_cycle(points, &self.graph, x) else {
                return false;
            };
            let k = cycle.len();
            let mut sign = 0.0;
            (0..k).all(|i| {
                let (a, b, c) = (cycle[i], cycle[(i + 1) % k], cycle[(i + 2) % k]);
                if self.polytope_edges.binary_search(&crate::polytope::edge(a, b)).is_err() {
                    return false;
                }
                let turn = (points[a] - points[x])
                    .cross(&(points[b] - points[x]))
                    .dot(&(points[c] - points[x]));
                if sign == 0.0 {
                    sign = turn.signum();
                }
                turn * sign > 0.0
            })
        })
    }

    fn penalty(&self, points: &[Point3<f64>]) -> f64 {
        let sq = |e: &Edge| (points[e.0] - points[e.1]).norm_squared() - 1.0;
        let eq: f64 = self.graph.edges().iter().map(|e| sq(e).powi(2)).sum();
        let ineq: f64 = self.non_edges.iter().map(|e| sq(e).max(0.0).powi(2)).sum();
        eq + ineq
    }

    fn to_free(&self, points: &[Point3<f64>]) -> Vec<f64> {
        self.free.iter().map(|&k| points[k / 3][k % 3]).collect()
    }

    fn assemble(&self, base: &[Point3<f64>], z: &[f64]) -> Vec<Point3<f64>> {
        let mut pts = base.to_vec();
        for (&k, &v) in self.free.iter().zip(z) {
            pts[k / 3][k % 3] = v;
        }
        pts
    }

    /// Projects `points` back onto the constraint set by minimum-norm
    /// Gauss-Newton steps. Non-edges that exceed unit length join the active
    /// set at distance one.
    pub fn restore(&self, points: &[Point3<f64>]) -> Result<Vec<Point3<f64>>> {
        let mut pts = points.to_vec();
        let mut active: Vec<Edge> = self.graph.edges().to_vec();
        let col: Vec<Option<usize>> = {
            let mut c = vec![None; 3 * pts.len()];
            for (idx, &k) in self.free.iter().enumerate() {
                c[k] = Some(idx);
            }
            c
        };
        for _ in 0..RESTORE_ITERS {
            for &e in &self.non_edges {
                if (pts[e.0] - pts[e.1]).norm_squared() > 1.0 && !active.contains(&e) {
                    active.push(e);
                }
            }
            if self.residual(&pts) <= RESTORE_TARGET {
                return Ok(pts);
            }
            let mut jac = DMatrix::zeros(active.len(), self.free.len());
            let mut g = DVector::zeros(active.len());
            for (row, &(i, j)) in active.iter().enumerate() {
                let d = pts[i] - pts[j];
                g[row] = d.norm_squared() - 1.0;
                for a in 0..3 {
                    if let Some(c) = col[3 * i + a] {
                        jac[(row, c)] += 2.0 * d[a];
                    }
                    if let Some(c) = col[3 * j + a] {
                        jac[(row, c)] -= 2.0 * d[a];
                    }
                }
            }
            let step = jac
                .svd(true, true)
                .solve(&g, 1e-12)
                .map_err(|e| Error::Geometry(format!("feasibility restoration: {e}")))?;
            let z: Vec<f64> = self.to_free(&pts).iter().zip(step.iter()).map(|(v, s)| v - s).collect();
            pts = self.assemble(&pts, &z);
        }
        let r = self.residual(&pts);
        if r <= FEASIBILITY_TOL {
            Ok(pts)
        } else {
            Err(Error::Geometry(format!("feasibility restoration stalled at residual {r:.3e}")))
        }
    }

    /// The start with Gaussian noise on the free coordinates, restored to
    /// feasibility. Retries with fresh noise if restoration fails.
    pub fn perturbed_start(&self, sigma: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Point3<f64>>> {
        let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let z0 = self.to_free(&self.start);
        let mut last = None;
        for _ in 0..PERTURB_ATTEMPTS {
            let z: Vec<f64> = z0.iter().map(|v| v + normal.sample(rng)).collect();
            match self.restore(&self.assemble(&self.start, &z)) {
                Ok(p) if self.consistent(&p) => return Ok(p),
                Ok(_) => last = Some(Error::Geometry("perturbed faces do not match the dual pairs".into())),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Geometry("no perturbation attempted".into())))
    }

    fn run(&self, restart: usize, seed: u64) -> Result<RunOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let mut current = if restart == 0 {
            self.start.clone()
        } else {
            self.perturbed_start(self.options.perturbation, &mut rng)?
        };
        let mut best_points = current.clone();
        let mut best = self.objective(&current);
        let mut trajectory = vec![best];
        let mut iterations = 0;
        let mut converged = false;
        let mut mu = PENALTY_START;
        for _ in 0..self.options.rounds {
            let base = current.clone();
            let penalized = |z: &[f64]| {
                let pts = self.assemble(&base, z);
                if !self.consistent(&pts) {
                    return f64::INFINITY;
                }
                -self.objective(&pts) + mu * self.penalty(&pts)
            };
            let nm = minimize(penalized, &self.to_free(&current), &self.options.nelder_mead);
            iterations += nm.evals;
            converged = nm.converged;
            match self.restore(&self.assemble(&base, &nm.x)) {
                Ok(pts) if self.consistent(&pts) => {
                    let v = self.objective(&pts);
                    if v > best {
                        best = v;
                        best_points = pts.clone();
                    }
                    current = pts;
                }
                _ => current = best_points.clone(),
            }
            trajectory.push(best);
            mu *= PENALTY_GROWTH;
        }
        Ok(RunOutcome {
            restart,
            value: best,
            residual: self.residual(&best_points),
            points: best_points,
            iterations,
            converged,
            trajectory,
        })
    }
}

fn edge_length(points: &[Point3<f64>], e: Edge) -> f64 {
    let chord = (points[e.0] - points[e.1]).norm().min(1.0);
    2.0 * (chord / 2.0).asin()
}

/// Rigid motion taking `p[0]` to the origin, `p[1]` onto the positive x axis
/// and `p[2]` into the xy plane.
fn canonical_frame(p: &[Point3<f64>]) -> Result<Vec<Point3<f64>>> {
    let ex = p[1] - p[0];
    let w = p[2] - p[0];
    let ez = ex.cross(&w);
    if ex.norm() < 1e-9 || ez.norm() < 1e-9 {
        return Err(Error::InvalidArgument("the first three vertices are collinear".into()));
    }
    let ex = ex.normalize();
    let ez = ez.normalize();
    let ey = ez.cross(&ex);
    Ok(p.iter()
        .map(|q| {
            let d = q - p[0];
            Point3::new(d.dot(&ex), d.dot(&ey), d.dot(&ez))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
struct RunOutcome {
    restart: usize,
    value: f64,
    residual: f64,
    points: Vec<Point3<f64>>,
    iterations: usize,
    converged: bool,
    trajectory: Vec<f64>,
}

/// Outcome of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub restart: usize,
    pub value: f64,
    pub area: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Whether the area is at least the Meissner tetrahedron's, up to 1e-6.
    pub above_tetrahedron: bool,
    /// Best feasible objective after the start and after each penalty round.
    pub trajectory: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    /// Largest `Σ f` over all restarts.
    pub best_value: f64,
    pub best_area: f64,
    pub best_volume: f64,
    pub best_points: Vec<Point3<f64>>,
    /// Objective evaluations summed over all restarts.
    pub iterations: usize,
    pub constraint_residual: f64,
    /// Trajectory of the winning restart.
    pub trajectory: Vec<f64>,
    pub runs: Vec<RunSummary>,
    /// Whether the winning restart's final simplex met the tolerances.
    pub converged: bool,
    pub all_above_tetrahedron: bool,
    /// Perimeter objective of the best configuration, for wheel graphs.
    pub pyramid_objective: Option<f64>,
}

/// Runs `restarts` independent searches; restart 0 starts from the given
/// configuration, the others from random feasible perturbations of it.
pub fn optimize_meissner(problem: &OptimizationProblem, restarts: usize, seed: u64) -> Result<OptimizationReport> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    let outcomes = (0..restarts)
        .into_par_iter()
        .map(|r| problem.run(r, seed))
        .collect::<Result<Vec<_>>>()?;
    let runs: Vec<RunSummary> = outcomes
        .iter()
        .map(|o| {
            let area = TAU - o.value;
            RunSummary {
                restart: o.restart,
                value: o.value,
                area,
                residual: o.residual,
                iterations: o.iterations,
                converged: o.converged,
                above_tetrahedron: area >= TETRAHEDRON_AREA - 1e-6,
                trajectory: o.trajectory.clone(),
            }
        })
        .collect();
    let best = outcomes
        .iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart");
    let best_area = TAU - best.value;
    let pyramid = if problem.gauge == Gauge::Apex {
        wheel_objective(&problem.graph, &best.points).ok()
    } else {
        None
    };
    Ok(OptimizationReport {
        best_value: best.value,
        best_area,
        best_volume: volume_from_area(best_area),
        best_points: best.points.clone(),
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        constraint_residual: best.residual,
        trajectory: best.trajectory.clone(),
        converged: best.converged,
        all_above_tetrahedron: runs.iter().all(|r| r.above_tetrahedron),
        runs,
        pyramid_objective: pyramid,
    })
}

/// Apex of a wheel graph: a vertex adjacent to all others whose removal
/// leaves a cycle.
fn wheel_apex(g: &DiameterGraph) -> Result<usize> {
    let m = g.vertex_count();
    let apex = (0..m)
        .find(|&v| g.degree(v) == m - 1)
        .ok_or_else(|| Error::NotAWheel("no vertex is adjacent to all others".into()))?;
    if let Some(v) = (0..m).find(|&v| v != apex && g.degree(v) != 3) {
        return Err(Error::NotAWheel(format!("base vertex {v} has degree {}", g.degree(v))));
    }
    Ok(apex)
}

fn wheel_objective(g: &DiameterGraph, points: &[Point3<f64>]) -> Result<f64> {
    let apex = wheel_apex(g)?;
    let pairs = dual_pair_indices(g)?;
    pairs
        .iter()
        .map(|&(e, d)| {
            let (apex_edge, base_edge) = match (e.0 == apex || e.1 == apex, d.0 == apex || d.1 == apex) {
                (true, false) => (e, d),
                (false, true) => (d, e),
                _ => return Err(Error::NotAWheel(format!("dual pair {e:?} / {d:?} is not apex/base"))),
            };
            let lengths = PairLengths::new(edge_length(points, apex_edge), edge_length(points, base_edge))?;
            let phi = spherical::dihedral_angle(lengths)?;
            Ok((lengths.theta / 2.0).cos() * phi)
        })
        .sum()
}

/// `Σ cos(θ_a/2) φ_a` over the apex edges of a wheel: the perimeter of the
/// apex face region.
pub fn pyramid_objective(vs: &VertexSet) -> Result<f64> {
    let g = crate::polytope::build_diameter_graph(vs)?;
    wheel_objective(&g, vs.points())
}

/// Searches Meissner pyramids over `n` base vertices, starting from the
/// regular one. `n = 3` is the tetrahedron.
pub fn optimize_pyramid(n: usize, restarts: usize, seed: u64) -> Result<OptimizationReport> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("base size must be odd and at least 3, got {n}")));
    }
    let vs = regular_pyramid((n - 1) / 2)?;
    let problem = OptimizationProblem::from_vertex_set(&vs, Gauge::Apex)?;
    wheel_apex(problem.graph())?;
    optimize_meissner(&problem, restarts, seed)
}

/// A random feasible variant of `vs` with the same diameter graph.
pub fn perturbed_variant(vs: &VertexSet, sigma: f64, seed: u64) -> Result<VertexSet> {
    let problem = OptimizationProblem::from_vertex_set(vs, Gauge::General)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..PERTURB_ATTEMPTS {
        let pts = problem.perturbed_start(sigma, &mut rng)?;
        match validate_vertex_set(pts, DEFAULT_TOL) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("attempted at least once"))
}

/// Applies a rotation about `axis` by `angle` and then a translation.
pub fn rigid_motion(points: &[Point3<f64>], axis: Vector3<f64>, angle: f64, shift: Vector3<f64>) -> Vec<Point3<f64>> {
    let rot = Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle);
    points.iter().map(|p| rot * p + shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::regular_tetrahedron;
    use crate::polytope::{build_diameter_graph, MeissnerPolyhedron};
    use approx::assert_abs_diff_eq;

    const TETRA_PYRAMID_OBJECTIVE: f64 = 3.198_126_379_334_405_2;
    const TETRA_SUM_F: f64 = 3.349_070_112_856_230_5;

    #[test]
    fn pyramid_objective_values() {
        assert_abs_diff_eq!(pyramid_objective(&regular_tetrahedron()).unwrap(), TETRA_PYRAMID_OBJECTIVE, epsilon = 1e-12);
        for k in 2..=4 {
            let vs = regular_pyramid(k).unwrap();
            let obj = pyramid_objective(&vs).unwrap();
            assert!(obj < TETRA_PYRAMID_OBJECTIVE);
            let m = MeissnerPolyhedron::with_optimal_smoothing(vs).unwrap();
            assert_abs_diff_eq!(TAU - std::f64::consts::FRAC_PI_3 * obj, m.area(), epsilon = 1e-12);
        }
    }

    #[test]
    fn non_wheel_rejected() {
        // Three dual pairs on 4 vertices is K4, which is a wheel; break the
        // degree pattern with a 6-vertex graph whose max degree is 3.
        let g = DiameterGraph::from_edges(
            6,
            [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        );
        assert!(matches!(wheel_apex(&g), Err(Error::NotAWheel(_))));
    }

    #[test]
    fn objective_matches_meissner_area() {
        let vs = regular_pyramid(2).unwrap();
        let p = OptimizationProblem::from_vertex_set(&vs, Gauge::General).unwrap();
        let m = MeissnerPolyhedron::with_optimal_smoothing(vs).unwrap();
        assert_abs_diff_eq!(TAU - p.objective(p.start()), m.area(), epsilon = 1e-12);
    }

    #[test]
    fn gauge_invariance() {
        let vs = regular_pyramid(3).unwrap();
        let p = OptimizationProblem::from_vertex_set(&vs, Gauge::General).unwrap();
        let moved = rigid_motion(vs.points(), Vector3::new(0.3, -1.0, 0.7), 2.1, Vector3::new(5.0, -2.0, 1.0));
        assert_abs_diff_eq!(p.objective(vs.points()), p.objective(&moved), epsilon = 1e-10);
        let q = OptimizationProblem::new(p.graph().clone(), moved, Gauge::General).unwrap();
        assert!(q.residual(q.start()) < 1e-12);
        assert_abs_diff_eq!(q.start()[0].coords.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.start()[1].y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.start()[2].z, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn infeasible_start_rejected() {
        let vs = regular_pyramid(2).unwrap();
        let g = build_diameter_graph(&vs).unwrap();
        let mut pts = vs.into_points();
        // Stretch the non-edge (1, 2) to length 1.2 along its direction.
        let mid = nalgebra::center(&pts[1], &pts[2]);
        let dir = (pts[2] - pts[1]).normalize();
        pts[1] = mid - dir * 0.6;
        pts[2] = mid + dir * 0.6;
        assert!(matches!(
            OptimizationProblem::new(g, pts, Gauge::General),
            Err(Error::InfeasibleStart(_))
        ));
    }

    #[test]
    fn restoration_reaches_feasibility() {
        let vs = regular_pyramid(2).unwrap();
        let p = OptimizationProblem::from_vertex_set(&vs, Gauge::General).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let pts = p.perturbed_start(0.05, &mut rng).unwrap();
            assert!(p.residual(&pts) <= RESTORE_TARGET);
        }
    }

    #[test]
    fn perturbed_variants_are_extremal() {
        let vs = regular_pyramid(2).unwrap();
        for seed in 0..5 {
            let v = perturbed_variant(&vs, 0.03, seed).unwrap();
            assert_eq!(v.diameter_count(), 10);
            assert_ne!(v.points(), vs.points());
        }
    }

    #[test]
    fn tetrahedron_is_a_fixed_point() {
        let p = OptimizationProblem::from_vertex_set(&regular_tetrahedron(), Gauge::General).unwrap();
        let r = optimize_meissner(&p, 3, 1).unwrap();
        assert_abs_diff_eq!(r.best_value, TETRA_SUM_F, epsilon = 1e-9);
        assert!(r.constraint_residual <= FEASIBILITY_TOL);
        assert!(r.all_above_tetrahedron);
    }

    #[test]
    fn pyramid_search_respects_bound() {
        let r = optimize_pyramid(5, 3, 11).unwrap();
        assert!(r.constraint_residual <= FEASIBILITY_TOL);
        assert!(r.best_area >= TETRAHEDRON_AREA - 1e-6, "{}", r.best_area);
        assert!(r.pyramid_objective.unwrap() <= TETRA_PYRAMID_OBJECTIVE + 1e-6);
        for run in &r.runs {
            assert!(run.trajectory.windows(2).all(|w| w[1] >= w[0]));
        }
        let regular = MeissnerPolyhedron::with_optimal_smoothing(regular_pyramid(2).unwrap()).unwrap();
        assert!(r.best_area <= regular.area() + 1e-12);
    }

    #[test]
    fn three_base_vertices_is_the_tetrahedron() {
        let r = optimize_pyramid(3, 1, 0).unwrap();
        assert_abs_diff_eq!(r.pyramid_objective.unwrap(), TETRA_PYRAMID_OBJECTIVE, epsilon = 1e-9);
        assert!(optimize_pyramid(4, 1, 0).is_err());
    }

    #[test]
    fn restarts_are_deterministic() {
        let a = optimize_pyramid(5, 2, 9).unwrap();
        let b = optimize_pyramid(5, 2, 9).unwrap();
        assert_eq!(a, b);
    }
}
