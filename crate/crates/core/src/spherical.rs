//! Closed-form spherical trigonometry for dual edge pairs.
//!
//! Every quantity here is a function of the two spherical edge lengths of a
//! dual pair, `theta` (the retained edge, which keeps its wedge) and
//! `theta_dual` (the smoothed edge, replaced by a spindle). All angles are in
//! radians.

use std::f64::consts::{FRAC_PI_3, PI, TAU};

use crate::error::{Error, Result};

/// Slack allowed before an inverse-trig argument or a length bound is
/// treated as an error instead of being clamped.
pub const CLAMP_TOL: f64 = 1e-9;

/// Largest dihedral angle of a dual-pair tetrahedron, `arccos(1/3)`.
pub fn max_dihedral() -> f64 {
    (1.0f64 / 3.0).acos()
}

pub(crate) fn clamped_asin(x: f64, what: &str) -> Result<f64> {
    clamp_unit(x, what).map(f64::asin)
}

pub(crate) fn clamped_acos(x: f64, what: &str) -> Result<f64> {
    clamp_unit(x, what).map(f64::acos)
}

fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + CLAMP_TOL {
        return Err(Error::Geometry(format!("{what}: argument {x} outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Spherical lengths of a dual pair `(e, e')`.
///
/// `theta` belongs to the retained edge `e`, `theta_dual` to the smoothed
/// edge `e'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairLengths {
    pub theta: f64,
    pub theta_dual: f64,
}

impl PairLengths {
    pub fn new(theta: f64, theta_dual: f64) -> Result<Self> {
        for (name, t) in [("theta", theta), ("theta_dual", theta_dual)] {
            if !(-CLAMP_TOL..=FRAC_PI_3 + CLAMP_TOL).contains(&t) {
                return Err(Error::Geometry(format!(
                    "{name} = {t} outside the admissible range [0, pi/3]"
                )));
            }
        }
        let theta = theta.clamp(0.0, FRAC_PI_3);
        let theta_dual = theta_dual.clamp(0.0, FRAC_PI_3);
        let s = (theta / 2.0).sin().powi(2) + (theta_dual / 2.0).sin().powi(2);
        if s > 1.0 + CLAMP_TOL {
            return Err(Error::Geometry(format!(
                "sin^2(theta/2) + sin^2(theta_dual/2) = {s} exceeds 1"
            )));
        }
        Ok(Self { theta, theta_dual })
    }

    /// The same pair seen from the other edge.
    pub fn swapped(self) -> Self {
        Self {
            theta: self.theta_dual,
            theta_dual: self.theta,
        }
    }

    /// Orders the pair so that the longer edge is the smoothed one.
    pub fn longest_smoothed(self) -> Self {
        if self.theta <= self.theta_dual {
            self
        } else {
            self.swapped()
        }
    }
}

/// Spherical length of an edge from its chord: `2 asin(chord / 2)`.
pub fn chord_to_arc(chord: f64) -> Result<f64> {
    if !chord.is_finite() || chord < -CLAMP_TOL {
        return Err(Error::Geometry(format!("invalid chord length {chord}")));
    }
    if chord > 1.0 + CLAMP_TOL {
        return Err(Error::DiameterViolation {
            pair: None,
            distance: chord,
        });
    }
    Ok(2.0 * (chord.clamp(0.0, 1.0) / 2.0).asin())
}

/// Dihedral angle `phi(e)` at the retained edge of the dual-pair tetrahedron.
pub fn dihedral_angle(lengths: PairLengths) -> Result<f64> {
    let ratio = (lengths.theta_dual / 2.0).sin() / (lengths.theta / 2.0).cos();
    Ok(2.0 * clamped_asin(ratio, "dihedral angle")?)
}

/// Distance between the midpoints of the two edges of a dual pair.
pub fn midpoint_distance(lengths: PairLengths) -> Result<f64> {
    let phi = dihedral_angle(lengths)?;
    Ok((phi / 2.0).cos() * (lengths.theta / 2.0).cos())
}

/// Angle between two intersecting circles on the unit sphere with spherical
/// radii `theta1`, `theta2` whose axes make the angle `axis_angle`.
pub fn circle_intersection_angle(theta1: f64, theta2: f64, axis_angle: f64) -> Result<f64> {
    let half_pi = PI / 2.0 + CLAMP_TOL;
    if !(0.0..=half_pi).contains(&theta1) || !(0.0..=half_pi).contains(&theta2) {
        return Err(Error::Geometry(format!(
            "circle radii ({theta1}, {theta2}) outside [0, pi/2]"
        )));
    }
    if axis_angle < (theta1 - theta2).abs() - CLAMP_TOL
        || axis_angle > theta1 + theta2 + CLAMP_TOL
        || axis_angle > TAU - theta1 - theta2 + CLAMP_TOL
    {
        return Err(Error::NoIntersection);
    }
    let denom = theta1.sin() * theta2.sin();
    if denom <= f64::EPSILON {
        return Err(Error::Geometry("degenerate circle of zero radius".into()));
    }
    let cos_alpha = (axis_angle.cos() - theta1.cos() * theta2.cos()) / denom;
    clamped_acos(cos_alpha, "circle intersection angle")
}

/// Angle `alpha(e)` between the edge arc and the adjacent geodesic.
///
/// Symmetric under [`PairLengths::swapped`].
pub fn wedge_angle(lengths: PairLengths) -> Result<f64> {
    let phi = dihedral_angle(lengths)?;
    let cos_alpha = (phi / 2.0).cos() / (lengths.theta_dual / 2.0).cos();
    if cos_alpha > 1.0 + CLAMP_TOL {
        return Err(Error::Geometry(format!("wedge angle: cosine {cos_alpha} exceeds 1")));
    }
    // acos loses half the digits near alpha = 0; the sine follows from the
    // dihedral relation as tan(theta/2) tan(theta_dual/2).
    let sin_alpha = (lengths.theta / 2.0).tan() * (lengths.theta_dual / 2.0).tan();
    Ok(sin_alpha.atan2(cos_alpha.min(1.0)))
}

/// Area of a spherical rectangle with side lengths `theta`, `theta_dual`.
pub fn rect_area(theta: f64, theta_dual: f64) -> Result<f64> {
    let product = (theta / 2.0).tan() * (theta_dual / 2.0).tan();
    Ok(4.0 * clamped_asin(product, "rectangle area")?)
}

/// Area of the wedge surface around the retained edge.
pub fn wedge_area(lengths: PairLengths) -> Result<f64> {
    let phi_dual = dihedral_angle(lengths.swapped())?;
    let area =
        4.0 * wedge_angle(lengths)? - 2.0 * (lengths.theta_dual / 2.0).sin() * phi_dual;
    Ok(area.max(0.0))
}

/// Area of a spindle of rotation angle `phi` around an edge of spherical
/// length `theta`.
pub fn spindle_area(theta: f64, phi: f64) -> f64 {
    let h = theta / 2.0;
    2.0 * phi * (h.sin() - h * h.cos())
}

/// `f(x, y) = 2 y cos(y/2) asin(sin(x/2) / cos(y/2))`, the area removed from
/// `2 pi` by one dual pair whose retained edge has length `x` and smoothed edge
/// length `y`.
pub fn f_pair(lengths: PairLengths) -> f64 {
    f_value(lengths.theta, lengths.theta_dual)
}

/// Unchecked evaluation of `f`; the asin argument is clamped into `[-1, 1]`.
pub(crate) fn f_value(x: f64, y: f64) -> f64 {
    let c = (y / 2.0).cos();
    let arg = ((x / 2.0).sin() / c).clamp(-1.0, 1.0);
    2.0 * y * c * arg.asin()
}

/// Partial derivative of `f` in the retained length.
pub fn f_partial_x(lengths: PairLengths) -> Result<f64> {
    let (x, y) = (lengths.theta, lengths.theta_dual);
    let radicand = 1.0 - (x / 2.0).sin().powi(2) - (y / 2.0).sin().powi(2);
    if radicand <= 1e-12 {
        return Err(Error::Geometry(format!(
            "df/dx undefined on the domain boundary at ({x}, {y})"
        )));
    }
    Ok(y * (x / 2.0).cos() * (y / 2.0).cos() / radicand.sqrt())
}

/// Area of a convex spherical geodesic polygon from its interior angles.
pub fn geodesic_polygon_area(angles: &[f64]) -> Result<f64> {
    if angles.len() < 3 {
        return Err(Error::Geometry(format!(
            "a spherical polygon needs at least 3 angles, got {}",
            angles.len()
        )));
    }
    let excess = angles.iter().sum::<f64>() - (angles.len() as f64 - 2.0) * PI;
    if excess < -CLAMP_TOL {
        return Err(Error::Geometry(format!("negative spherical excess {excess}")));
    }
    Ok(excess.max(0.0))
}

/// One boundary arc of a spherical region: a piece of a circle of Euclidean
/// radius `radius` on the unit sphere, of length `length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    pub radius: f64,
    pub length: f64,
}

impl BoundaryArc {
    pub fn geodesic(length: f64) -> Self {
        Self { radius: 1.0, length }
    }

    fn geodesic_curvature(&self) -> f64 {
        (1.0 - self.radius * self.radius).max(0.0).sqrt() / self.radius
    }
}

/// Gauss-Bonnet area of a simply connected region on the unit sphere bounded
/// by circle arcs, given its turning (exterior) angles and boundary arcs.
pub fn arc_polygon_area(turning: &[f64], arcs: &[BoundaryArc]) -> f64 {
    let total_curvature: f64 = arcs.iter().map(|a| a.length * a.geodesic_curvature()).sum();
    TAU - turning.iter().sum::<f64>() - total_curvature
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Reference values evaluated independently at 30 significant digits.
    const ACOS_THIRD: f64 = 1.230_959_417_340_774_7;
    const ASIN_THIRD: f64 = 0.339_836_909_454_121_94;
    const RECT_TETRA: f64 = 1.359_347_637_816_487_7;
    const WEDGE_TETRA: f64 = 0.128_388_220_475_713_07;
    const SPINDLE_TETRA: f64 = 0.114_602_713_055_364_5;
    const F_TETRA: f64 = 1.116_356_704_285_410_2;
    const F_04_09: f64 = 0.360_571_587_437_989_93;

    fn tetra() -> PairLengths {
        PairLengths::new(FRAC_PI_3, FRAC_PI_3).unwrap()
    }

    #[test]
    fn chord_examples() {
        assert_eq!(chord_to_arc(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(chord_to_arc(1.0).unwrap(), FRAC_PI_3, epsilon = 1e-15);
        assert_abs_diff_eq!(chord_to_arc(0.5).unwrap(), 0.505_360_510_284_157_3, epsilon = 1e-15);
        assert_abs_diff_eq!(chord_to_arc(1.0 + 1e-10).unwrap(), FRAC_PI_3, epsilon = 1e-15);
        assert!(matches!(
            chord_to_arc(1.001),
            Err(Error::DiameterViolation { .. })
        ));
    }

    #[test]
    fn dihedral_examples() {
        assert_abs_diff_eq!(dihedral_angle(tetra()).unwrap(), ACOS_THIRD, epsilon = 1e-15);
        let l = PairLengths::new(0.7, 0.0).unwrap();
        assert_eq!(dihedral_angle(l).unwrap(), 0.0);
        let l = PairLengths::new(0.0, 0.8).unwrap();
        assert_abs_diff_eq!(dihedral_angle(l).unwrap(), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn midpoint_distance_examples() {
        assert_abs_diff_eq!(
            midpoint_distance(tetra()).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        let l = PairLengths::new(0.0, 0.0).unwrap();
        assert_eq!(midpoint_distance(l).unwrap(), 1.0);
        let l = PairLengths::new(0.3, 0.9).unwrap();
        assert_abs_diff_eq!(
            midpoint_distance(l).unwrap(),
            midpoint_distance(l.swapped()).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn circle_angle_examples() {
        let half = PI / 2.0;
        assert_abs_diff_eq!(
            circle_intersection_angle(half, half, half).unwrap(),
            half,
            epsilon = 1e-15
        );
        let a = circle_intersection_angle(half - PI / 6.0, half, ACOS_THIRD / 2.0).unwrap();
        assert_abs_diff_eq!(a, ASIN_THIRD, epsilon = 1e-12);
        assert_abs_diff_eq!(a, wedge_angle(tetra()).unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            circle_intersection_angle(0.9, 0.4, 0.5).unwrap(),
            0.0,
            epsilon = 1e-7
        );
        assert_eq!(
            circle_intersection_angle(0.2, 0.3, 1.0),
            Err(Error::NoIntersection)
        );
    }

    #[test]
    fn wedge_angle_examples() {
        assert_abs_diff_eq!(wedge_angle(tetra()).unwrap(), ASIN_THIRD, epsilon = 1e-12);
        let l = PairLengths::new(0.0, 0.6).unwrap();
        assert_eq!(wedge_angle(l).unwrap(), 0.0);
    }

    #[test]
    fn rect_area_examples() {
        assert_eq!(rect_area(0.0, 0.7).unwrap(), 0.0);
        assert_abs_diff_eq!(rect_area(FRAC_PI_3, FRAC_PI_3).unwrap(), RECT_TETRA, epsilon = 1e-14);
        assert_abs_diff_eq!(
            rect_area(FRAC_PI_3, FRAC_PI_3).unwrap(),
            4.0 * wedge_angle(tetra()).unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(rect_area(0.2, 0.9).unwrap(), rect_area(0.9, 0.2).unwrap());
        assert!(rect_area(3.0, 3.0).is_err());
    }

    #[test]
    fn wedge_and_spindle_examples() {
        assert_abs_diff_eq!(wedge_area(tetra()).unwrap(), WEDGE_TETRA, epsilon = 1e-12);
        assert_abs_diff_eq!(
            wedge_area(PairLengths::new(0.0, 0.7).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            wedge_area(PairLengths::new(0.7, 0.0).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_eq!(spindle_area(0.0, 1.0), 0.0);
        assert_eq!(spindle_area(0.8, 0.0), 0.0);
        assert_abs_diff_eq!(spindle_area(FRAC_PI_3, ACOS_THIRD), SPINDLE_TETRA, epsilon = 1e-14);
    }

    /// Spindle area as a surface of revolution, integrated with composite
    /// Simpson's rule over the generating unit-circle arc.
    #[test]
    fn spindle_matches_revolution_quadrature() {
        for &(theta, phi) in &[(FRAC_PI_3, ACOS_THIRD), (0.6, 0.4), (0.25, 1.1)] {
            let c = (theta / 2.0f64).cos();
            let s = (theta / 2.0f64).sin();
            let g = |x: f64| ((1.0 - x * x).sqrt() - c) / (1.0 - x * x).sqrt();
            let n = 2000;
            let h = 2.0 * s / n as f64;
            let mut acc = g(-s) + g(s);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * g(-s + i as f64 * h);
            }
            let full_turn = acc * h / 3.0;
            assert_abs_diff_eq!(phi * full_turn, spindle_area(theta, phi), epsilon = 1e-12);
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_pair(PairLengths::new(0.0, 0.9).unwrap()), 0.0);
        assert_abs_diff_eq!(f_pair(tetra()), F_TETRA, epsilon = 1e-14);
        // Meissner tetrahedron: 3 f(pi/3, pi/3) = (sqrt 3 / 2) pi arccos(1/3).
        assert_abs_diff_eq!(
            3.0 * f_pair(tetra()),
            3f64.sqrt() / 2.0 * PI * ACOS_THIRD,
            epsilon = 1e-13
        );
        let l = PairLengths::new(0.4, 0.9).unwrap();
        assert_abs_diff_eq!(f_pair(l), F_04_09, epsilon = 1e-14);
        let rhs = rect_area(0.4, 0.9).unwrap()
            - wedge_area(l).unwrap()
            - spindle_area(0.9, dihedral_angle(l.swapped()).unwrap());
        assert_abs_diff_eq!(f_pair(l), rhs, epsilon = 1e-12);
    }

    #[test]
    fn f_is_arc_length_times_dual_length() {
        let l = PairLengths::new(0.5, 0.8).unwrap();
        let ell = (l.theta_dual / 2.0).cos() * dihedral_angle(l.swapped()).unwrap();
        assert_abs_diff_eq!(f_pair(l), ell * l.theta_dual, epsilon = 1e-14);
    }

    #[test]
    fn f_partial_x_examples() {
        let l = PairLengths::new(0.3, 0.5).unwrap();
        let h = 1e-5;
        let fd = (f_pair(PairLengths::new(0.3 + h, 0.5).unwrap())
            - f_pair(PairLengths::new(0.3 - h, 0.5).unwrap()))
            / (2.0 * h);
        let exact = f_partial_x(l).unwrap();
        assert!((fd - exact).abs() / exact < 1e-6);
        assert_abs_diff_eq!(exact, 0.500_372_735_730_433_8, epsilon = 1e-14);

        for &y in &[0.1, 0.5, 1.0] {
            let l = PairLengths::new(0.0, y).unwrap();
            assert_abs_diff_eq!(f_partial_x(l).unwrap(), y, epsilon = 1e-14);
        }

        let mut prev = 0.0;
        for i in 0..=50 {
            let x = FRAC_PI_3 * i as f64 / 50.0;
            let v = f_pair(PairLengths::new(x, 0.7).unwrap());
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn geodesic_polygon_examples() {
        let half = PI / 2.0;
        assert_abs_diff_eq!(
            geodesic_polygon_area(&[half, half, half]).unwrap(),
            half,
            epsilon = 1e-15
        );
        // Rectangle with both side lengths pi/3: four angles pi/2 + asin(1/3).
        let a = half + ASIN_THIRD;
        assert_abs_diff_eq!(
            geodesic_polygon_area(&[a; 4]).unwrap(),
            rect_area(FRAC_PI_3, FRAC_PI_3).unwrap(),
            epsilon = 1e-12
        );
        let face = geodesic_polygon_area(&[ACOS_THIRD; 3]).unwrap();
        assert_abs_diff_eq!(face, (TAU - 3.0 * RECT_TETRA) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(face, 0.551_285_598_432_530_8, epsilon = 1e-14);
        assert!(geodesic_polygon_area(&[0.1, 0.1, 0.1]).is_err());
        assert!(geodesic_polygon_area(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn arc_polygon_examples() {
        let angles = [1.2, 1.3, 1.4];
        let turning: Vec<f64> = angles.iter().map(|a| PI - a).collect();
        let arcs = [BoundaryArc::geodesic(0.5); 3];
        assert_abs_diff_eq!(
            arc_polygon_area(&turning, &arcs),
            geodesic_polygon_area(&angles).unwrap(),
            epsilon = 1e-14
        );

        let l = tetra();
        let alpha = wedge_angle(l).unwrap();
        let phi_dual = dihedral_angle(l.swapped()).unwrap();
        let r = (l.theta_dual / 2.0).cos();
        let half_wedge = arc_polygon_area(
            &[PI - alpha, PI - alpha],
            &[
                BoundaryArc::geodesic(l.theta),
                BoundaryArc {
                    radius: r,
                    length: r * phi_dual,
                },
            ],
        );
        assert_abs_diff_eq!(half_wedge, wedge_area(l).unwrap() / 2.0, epsilon = 1e-12);

        let rho: f64 = 0.7;
        let cap = arc_polygon_area(
            &[],
            &[BoundaryArc {
                radius: rho.sin(),
                length: TAU * rho.sin(),
            }],
        );
        assert_abs_diff_eq!(cap, TAU * (1.0 - rho.cos()), epsilon = 1e-14);
    }

    #[test]
    fn pair_lengths_validation() {
        assert!(PairLengths::new(1.2, 0.1).is_err());
        assert!(PairLengths::new(-0.1, 0.1).is_err());
        assert!(PairLengths::new(f64::NAN, 0.1).is_err());
        let l = PairLengths::new(0.9, 0.2).unwrap().longest_smoothed();
        assert_eq!((l.theta, l.theta_dual), (0.2, 0.9));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn admissible() -> impl Strategy<Value = PairLengths> {
            (0.0..=FRAC_PI_3, 0.0..=FRAC_PI_3).prop_map(|(x, y)| PairLengths::new(x, y).unwrap())
        }

        proptest! {
            #[test]
            fn decomposition_identity(l in admissible()) {
                let phi_dual = dihedral_angle(l.swapped()).unwrap();
                let rhs = rect_area(l.theta, l.theta_dual).unwrap()
                    - wedge_area(l).unwrap()
                    - spindle_area(l.theta_dual, phi_dual);
                prop_assert!((f_pair(l) - rhs).abs() <= 1e-12);
            }

            #[test]
            fn symmetric_quantities(l in admissible()) {
                prop_assert!((wedge_angle(l).unwrap() - wedge_angle(l.swapped()).unwrap()).abs() < 1e-12);
                prop_assert!((midpoint_distance(l).unwrap() - midpoint_distance(l.swapped()).unwrap()).abs() < 1e-14);
            }

            #[test]
            fn rectangle_is_four_alpha(l in admissible()) {
                let r = rect_area(l.theta, l.theta_dual).unwrap();
                prop_assert!((r - 4.0 * wedge_angle(l).unwrap()).abs() < 1e-12);
            }

            #[test]
            fn dihedral_bounded(l in admissible()) {
                let phi = dihedral_angle(l).unwrap();
                prop_assert!(phi >= 0.0 && phi <= max_dihedral() + 1e-12);
            }

            #[test]
            fn areas_nonnegative(l in admissible()) {
                prop_assert!(f_pair(l) >= 0.0);
                prop_assert!(wedge_area(l).unwrap() >= 0.0);
                prop_assert!(spindle_area(l.theta, dihedral_angle(l).unwrap()) >= 0.0);
            }
        }
    }
}
