//! Circular arcs in space: the edges of a ball polytope.

use nalgebra::{Point3, Vector3};
use std::f64::consts::TAU;

/// A circular arc `center + radius (cos t u + sin t v)` for `t` in
/// `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: Point3<f64>,
    pub radius: f64,
    pub u: Vector3<f64>,
    pub v: Vector3<f64>,
    pub start: f64,
    pub end: f64,
}

impl Arc {
    /// The short arc from `x` to `y` on the circle `dB(a) ∩ dB(b)` of two
    /// unit spheres, where `x` and `y` both lie on that circle.
    ///
    /// When `a` and `b` coincide the circle degenerates to a great circle of
    /// the unit sphere about `a`, and the great-circle arc from `x` to `y` is
    /// returned instead.
    pub fn edge_arc(x: &Point3<f64>, y: &Point3<f64>, a: &Point3<f64>, b: &Point3<f64>) -> Arc {
        let ab = b - a;
        let (center, axis) = if ab.norm() > 1e-12 {
            (nalgebra::center(a, b), ab.normalize())
        } else {
            let n = (x - a).cross(&(y - a));
            let axis = if n.norm() > 1e-15 {
                n.normalize()
            } else {
                any_orthogonal(&(x - a))
            };
            (*a, axis)
        };
        let radial = x - center;
        let radial = radial - axis * axis.dot(&radial);
        let radius = radial.norm();
        let u = if radius > 1e-15 {
            radial / radius
        } else {
            any_orthogonal(&axis)
        };
        let mut v = axis.cross(&u);
        let w = y - center;
        let mut end = w.dot(&v).atan2(w.dot(&u));
        if end < 0.0 {
            v = -v;
            end = -end;
        }
        Arc {
            center,
            radius,
            u,
            v,
            start: 0.0,
            end,
        }
    }

    pub fn point_at(&self, t: f64) -> Point3<f64> {
        self.center + (self.u * t.cos() + self.v * t.sin()) * self.radius
    }

    /// Unit normal of the plane of the arc.
    pub fn axis(&self) -> Vector3<f64> {
        self.u.cross(&self.v)
    }

    pub fn sweep(&self) -> f64 {
        self.end - self.start
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep()
    }

    pub fn endpoints(&self) -> (Point3<f64>, Point3<f64>) {
        (self.point_at(self.start), self.point_at(self.end))
    }

    /// Whether the angle `t` (any representative mod 2π) lies in the arc.
    pub fn contains_angle(&self, t: f64) -> bool {
        let rel = (t - self.start).rem_euclid(TAU);
        rel <= self.sweep() + 1e-15
    }

    /// Angle of the in-plane direction `(cu, cv)` measured from `u`.
    fn angle_of(cu: f64, cv: f64) -> f64 {
        cv.atan2(cu)
    }

    /// The largest distance from `p` to a point of the arc.
    pub fn max_distance(&self, p: &Point3<f64>) -> f64 {
        let w = p - self.center;
        let (pu, pv) = (w.dot(&self.u), w.dot(&self.v));
        if pu.hypot(pv) <= 1e-15 {
            // On the axis: every point of the circle is equidistant.
            return (p - self.point_at(self.start)).norm();
        }
        let far = Self::angle_of(-pu, -pv);
        if self.contains_angle(far) {
            (p - self.point_at(far)).norm()
        } else {
            let (a, b) = self.endpoints();
            (p - a).norm().max((p - b).norm())
        }
    }

    /// The point of the arc minimizing `dir · c`.
    pub fn argmin_dot(&self, dir: &Vector3<f64>) -> Point3<f64> {
        self.extreme_dot(&-dir)
    }

    /// The point of the arc maximizing `dir · c`.
    pub fn argmax_dot(&self, dir: &Vector3<f64>) -> Point3<f64> {
        self.extreme_dot(dir)
    }

    fn extreme_dot(&self, dir: &Vector3<f64>) -> Point3<f64> {
        let (du, dv) = (dir.dot(&self.u), dir.dot(&self.v));
        if du.hypot(dv) > 1e-15 {
            let best = Self::angle_of(du, dv);
            if self.contains_angle(best) {
                return self.point_at(best);
            }
        }
        let (a, b) = self.endpoints();
        if dir.dot(&a.coords) >= dir.dot(&b.coords) {
            a
        } else {
            b
        }
    }

    /// `n + 1` evenly spaced points from start to end.
    pub fn sample(&self, n: usize) -> impl Iterator<Item = Point3<f64>> + '_ {
        (0..=n).map(move |i| self.point_at(self.start + self.sweep() * i as f64 / n as f64))
    }
}

/// Some unit vector orthogonal to `v`.
pub(crate) fn any_orthogonal(v: &Vector3<f64>) -> Vector3<f64> {
    let trial = if v.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let o = v.cross(&trial);
    if o.norm() > 0.0 {
        o.normalize()
    } else {
        Vector3::z()
    }
}
