//! Monte Carlo volume and support-function width of intersections of unit
//! balls centered at points and along circular arcs.

use std::f64::consts::PI;

use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::polytope::{MeissnerPolyhedron, VertexSet};

/// Samples drawn per RNG stream. Chunk `i` uses stream `i` of the seed, so
/// the estimate does not depend on how chunks are scheduled.
pub const CHUNK: u64 = 1 << 16;

pub const MIN_SAMPLES: u64 = 10_000;

/// Slack used when deciding that a support candidate lies in the body.
const SUPPORT_TOL: f64 = 1e-9;

/// The intersection of unit balls centered at `point_centers` and at every
/// point of every arc in `arc_centers`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSystem {
    pub point_centers: Vec<Point3<f64>>,
    pub arc_centers: Vec<Arc>,
}

impl BallSystem {
    pub fn new(point_centers: Vec<Point3<f64>>, arc_centers: Vec<Arc>) -> Result<Self> {
        if point_centers.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(Self {
            point_centers,
            arc_centers,
        })
    }

    /// Balls about the vertices and along each retained edge.
    pub fn meissner(m: &MeissnerPolyhedron) -> Self {
        Self {
            point_centers: m.vertices().points().to_vec(),
            arc_centers: m.oriented().map(|o| *o.retained_arc).collect(),
        }
    }

    /// Balls about the vertices only.
    pub fn reuleaux(vs: &VertexSet) -> Self {
        Self {
            point_centers: vs.points().to_vec(),
            arc_centers: Vec::new(),
        }
    }

    pub fn contains(&self, p: &Point3<f64>) -> bool {
        self.contains_with(p, 0.0)
    }

    fn contains_with(&self, p: &Point3<f64>, slack: f64) -> bool {
        let r2 = (1.0 + slack) * (1.0 + slack);
        self.point_centers.iter().all(|c| (p - c).norm_squared() <= r2)
            && self.arc_centers.iter().all(|a| a.max_distance(p) <= 1.0 + slack)
    }

    /// Support function `max { u·p : p in the body }` for a unit vector `u`.
    pub fn support(&self, u: &Vector3<f64>) -> f64 {
        let mut best = f64::NEG_INFINITY;
        let mut consider = |p: Point3<f64>| {
            let h = u.dot(&p.coords);
            if h > best && self.contains_with(&p, SUPPORT_TOL) {
                best = h;
            }
        };
        for c in &self.point_centers {
            consider(*c);
            consider(c + u);
        }
        for a in &self.arc_centers {
            consider(a.argmax_dot(u));
            consider(a.argmin_dot(u) + u);
        }
        for (i, a) in self.point_centers.iter().enumerate() {
            for b in &self.point_centers[i + 1..] {
                if let Some(p) = circle_support_point(a, b, u) {
                    consider(p);
                }
            }
        }
        best
    }

    pub fn width(&self, u: &Vector3<f64>) -> f64 {
        self.support(u) + self.support(&-u)
    }
}

/// The point of `dB(a) ∩ dB(b)` maximizing `u·p`.
fn circle_support_point(a: &Point3<f64>, b: &Point3<f64>, u: &Vector3<f64>) -> Option<Point3<f64>> {
    let ab = b - a;
    let d = ab.norm();
    if !(1e-12..=2.0).contains(&d) {
        return None;
    }
    let n = ab / d;
    let rho = (1.0 - d * d / 4.0).sqrt();
    let in_plane = u - n * n.dot(u);
    if in_plane.norm() < 1e-12 {
        return None;
    }
    Some(nalgebra::center(a, b) + in_plane.normalize() * rho)
}

/// Largest distance from `p` to a point of `arc`.
pub fn max_dist_point_to_arc(p: &Point3<f64>, arc: &Arc) -> f64 {
    arc.max_distance(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub volume_estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
}

fn unit_ball_sample(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}

/// Rejection-sampled volume estimate, uniform in the unit ball about the
/// first point center.
pub fn mc_volume(system: &BallSystem, samples: u64, seed: u64) -> Result<McResult> {
    let origin = *system.point_centers.first().ok_or(Error::EmptySystem)?;
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_SAMPLES} samples are required, got {samples}"
        )));
    }
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = CHUNK.min(samples - chunk * CHUNK);
            (0..n)
                .filter(|_| system.contains(&(origin + unit_ball_sample(&mut rng))))
                .count() as u64
        })
        .sum();
    let ball = 4.0 * PI / 3.0;
    let p = hits as f64 / samples as f64;
    Ok(McResult {
        volume_estimate: ball * p,
        std_error: ball * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        hits,
        seed,
    })
}

/// Smallest and largest width over `directions` random unit vectors.
pub fn width_samples(system: &BallSystem, directions: usize, seed: u64) -> Result<(f64, f64)> {
    if system.point_centers.is_empty() {
        return Err(Error::EmptySystem);
    }
    if directions == 0 {
        return Err(Error::InvalidArgument("at least one direction is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<Vector3<f64>> = (0..directions)
        .map(|_| Vector3::from(UnitSphere.sample(&mut rng)))
        .collect();
    let widths: Vec<f64> = dirs.par_iter().map(|u| system.width(u)).collect();
    Ok(widths
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &w| (lo.min(w), hi.max(w))))
}
