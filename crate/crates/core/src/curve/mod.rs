//! Curves `f: C* → Pⁿ` in canonical product representation.
//!
//! Points of `C*` are handled in cylinder coordinates `(t, θ) = (log|z|, arg z)`;
//! the metric `|dz|/|z|` becomes the flat metric of a cylinder of
//! circumference `2π`.

mod jensen;
mod product;
mod projective;
mod spec;

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::plc::{PLConvex, KNOT_EPS};

pub use self::jensen::{circle_mean, jensen_check, JensenReport, JENSEN_NODES, ZERO_CLEARANCE};
pub use self::product::log_one_minus_exp;
pub use self::projective::{fs_distance, ProjectivePoint};
pub use self::spec::{CoordinateSpec, CurveSpec, LoadedCurve, ZeroSpec};

/// Default tolerance (cylinder distance) for detecting common zeros.
pub const EPS_ZERO: f64 = 1e-9;

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// A point of `C*` as `(log|z|, arg z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogPoint {
    pub t: f64,
    pub theta: f64,
}

impl LogPoint {
    pub fn new(t: f64, theta: f64) -> Self {
        LogPoint {
            t,
            theta: wrap_angle(theta),
        }
    }

    /// Geodesic distance on the flat cylinder.
    pub fn distance(&self, other: &LogPoint) -> f64 {
        cylinder_distance(self, other)
    }
}

pub fn cylinder_distance(p: &LogPoint, q: &LogPoint) -> f64 {
    let dt = p.t - q.t;
    let dtheta = wrap_angle(p.theta - q.theta);
    dt.hypot(dtheta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zero {
    pub point: LogPoint,
    pub multiplicity: u32,
}

impl Zero {
    pub fn new(t: f64, theta: f64, multiplicity: u32) -> Self {
        Zero {
            point: LogPoint::new(t, theta),
            multiplicity,
        }
    }

    pub fn simple(t: f64, theta: f64) -> Self {
        Zero::new(t, theta, 1)
    }
}

/// One homogeneous coordinate
/// `g(z) = A z^m ∏_{|z_k|<1} (1 − z_k/z) ∏_{|z_k|≥1} (1 − z/z_k)`.
///
/// Zeros with `t = 0` belong to the second product.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCoordinate {
    log_a: f64,
    arg_a: f64,
    m: u32,
    zeros: Vec<Zero>,
}

impl CanonicalCoordinate {
    pub fn new(log_a: f64, arg_a: f64, m: u32, zeros: Vec<Zero>) -> Result<Self> {
        if !log_a.is_finite() || !arg_a.is_finite() {
            return Err(Error::invalid("logA and argA must be finite"));
        }
        for z in &zeros {
            if !z.point.t.is_finite() || !z.point.theta.is_finite() {
                return Err(Error::invalid("zero coordinates must be finite"));
            }
            if z.multiplicity == 0 {
                return Err(Error::invariant(
                    "multiplicity >= 1",
                    format!("zero at t = {} has multiplicity 0", z.point.t),
                ));
            }
        }
        let mut zeros: Vec<Zero> = zeros
            .into_iter()
            .map(|z| Zero::new(z.point.t, z.point.theta, z.multiplicity))
            .collect();
        zeros.sort_by(|a, b| {
            a.point
                .t
                .total_cmp(&b.point.t)
                .then(a.point.theta.total_cmp(&b.point.theta))
        });
        // merge repeated points; equal t within KNOT_EPS are adjacent after sorting
        let mut merged: Vec<Zero> = Vec::with_capacity(zeros.len());
        for z in zeros {
            let dup = merged
                .iter_mut()
                .rev()
                .take_while(|m| z.point.t - m.point.t <= KNOT_EPS)
                .find(|m| cylinder_distance(&m.point, &z.point) <= KNOT_EPS);
            match dup {
                Some(m) => m.multiplicity += z.multiplicity,
                None => merged.push(z),
            }
        }
        Ok(CanonicalCoordinate {
            log_a,
            arg_a: wrap_angle(arg_a),
            m,
            zeros: merged,
        })
    }

    /// Zero-free coordinate `A z^m`.
    pub fn monomial(log_a: f64, m: u32) -> Self {
        CanonicalCoordinate {
            log_a,
            arg_a: 0.0,
            m,
            zeros: Vec::new(),
        }
    }

    pub fn log_a(&self) -> f64 {
        self.log_a
    }

    pub fn arg_a(&self) -> f64 {
        self.arg_a
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Zeros sorted by `t`.
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.zeros.iter().map(|z| z.multiplicity as u64).sum()
    }

    /// Same zeros and scale with exponent `m`.
    pub fn with_m(&self, m: u32) -> Self {
        CanonicalCoordinate { m, ..self.clone() }
    }

    pub fn with_log_a(&self, log_a: f64) -> Self {
        CanonicalCoordinate {
            log_a,
            ..self.clone()
        }
    }

    /// `t ↦ N(e^t, g)` in closed form:
    /// `log|A| + m t + Σ_{τ≥0} μ (t − τ)⁺ + Σ_{τ<0} μ (τ − t)⁺`.
    pub fn counting_function(&self) -> PLConvex {
        let inner: i64 = self
            .zeros
            .iter()
            .filter(|z| z.point.t < 0.0)
            .map(|z| z.multiplicity as i64)
            .sum();
        let jumps = self
            .zeros
            .iter()
            .map(|z| (z.point.t, z.multiplicity as i64));
        PLConvex::from_jumps(self.m as i64 - inner, jumps, (0.0, self.log_a))
            .expect("zero multiplicities are positive")
    }

    /// Total multiplicity of zeros with `t1 < τ ≤ t2`.
    pub fn zero_count_in_annulus(&self, t1: f64, t2: f64) -> u64 {
        if t2 <= t1 {
            return 0;
        }
        let lo = self.zeros.partition_point(|z| z.point.t <= t1);
        let hi = self.zeros.partition_point(|z| z.point.t <= t2);
        self.zeros[lo..hi]
            .iter()
            .map(|z| z.multiplicity as u64)
            .sum()
    }

    /// `(log|g(z)|, arg g(z))`, summed factor by factor in log space.
    /// At a zero the modulus is `−∞` and the argument is reported as 0.
    pub fn evaluate_log(&self, z: LogPoint) -> (f64, f64) {
        product::evaluate(self, z)
    }

    /// `log|g(z)|` alone.
    pub fn log_modulus(&self, z: LogPoint) -> f64 {
        product::log_modulus(self, z)
    }

    /// Index range of zeros whose `t` lies in `[lo, hi]`.
    pub(crate) fn zeros_in_t_range(&self, lo: f64, hi: f64) -> &[Zero] {
        let a = self.zeros.partition_point(|z| z.point.t < lo);
        let b = self.zeros.partition_point(|z| z.point.t <= hi);
        &self.zeros[a..b]
    }

    /// Cylinder distance from `p` to the nearest zero, `+∞` when zero-free.
    pub fn distance_to_zeros(&self, p: &LogPoint) -> f64 {
        let mut best = f64::INFINITY;
        let start = self.zeros.partition_point(|z| z.point.t < p.t);
        // walk outwards from p.t; stop once the t-gap alone exceeds the best distance
        for z in self.zeros[start..].iter() {
            if z.point.t - p.t > best {
                break;
            }
            best = best.min(cylinder_distance(p, &z.point));
        }
        for z in self.zeros[..start].iter().rev() {
            if p.t - z.point.t > best {
                break;
            }
            best = best.min(cylinder_distance(p, &z.point));
        }
        best
    }
}

/// A curve `F = (g_0, …, g_n)` with `min_j m_j = 0` and no common zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    label: String,
    coordinates: Vec<CanonicalCoordinate>,
}

impl Curve {
    pub fn new(label: impl Into<String>, coordinates: Vec<CanonicalCoordinate>) -> Result<Self> {
        Self::with_tolerance(label, coordinates, EPS_ZERO)
    }

    /// Like [`Curve::new`] with an explicit common-zero tolerance.
    pub fn with_tolerance(
        label: impl Into<String>,
        coordinates: Vec<CanonicalCoordinate>,
        eps_zero: f64,
    ) -> Result<Self> {
        if coordinates.len() < 2 {
            return Err(Error::invariant(
                "n >= 1",
                format!("a curve needs at least 2 coordinates, got {}", coordinates.len()),
            ));
        }
        let min_m = coordinates.iter().map(|c| c.m).min().unwrap();
        if min_m != 0 {
            return Err(Error::invariant(
                "min_j m_j = 0",
                format!("smallest exponent is {min_m}"),
            ));
        }
        if let Some(p) = find_common_zero(&coordinates, eps_zero) {
            return Err(Error::invariant(
                "no common zeros",
                format!(
                    "all coordinates vanish within {eps_zero} of (t = {}, theta = {})",
                    p.t, p.theta
                ),
            ));
        }
        Ok(Curve {
            label: label.into(),
            coordinates,
        })
    }

    /// Shifts all exponents so that the smallest is 0; returns the curve and the shift.
    pub fn normalized(
        label: impl Into<String>,
        coordinates: Vec<CanonicalCoordinate>,
    ) -> Result<(Self, u32)> {
        let shift = coordinates.iter().map(|c| c.m).min().unwrap_or(0);
        let coords = coordinates.iter().map(|c| c.with_m(c.m - shift)).collect();
        Ok((Curve::new(label, coords)?, shift))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coordinates(&self) -> &[CanonicalCoordinate] {
        &self.coordinates
    }

    /// Projective dimension `n`.
    pub fn dimension(&self) -> usize {
        self.coordinates.len() - 1
    }

    pub fn counting_functions(&self) -> Vec<PLConvex> {
        self.coordinates
            .iter()
            .map(CanonicalCoordinate::counting_function)
            .collect()
    }

    /// `N(t, F) = max_j N(t, g_j)`.
    pub fn envelope(&self) -> PLConvex {
        PLConvex::max_envelope(&self.counting_functions()).expect("curve has coordinates")
    }

    /// Smallest and largest `t` of any zero, `None` for zero-free curves.
    pub fn zero_t_range(&self) -> Option<(f64, f64)> {
        let ts = self
            .coordinates
            .iter()
            .flat_map(|c| c.zeros.first().into_iter().chain(c.zeros.last()))
            .map(|z| z.point.t);
        ts.fold(None, |acc, t| match acc {
            None => Some((t, t)),
            Some((lo, hi)) => Some((lo.min(t), hi.max(t))),
        })
    }

    /// Same curve with `c` added to every `log|A_j|` (another representative
    /// of the same projective map).
    pub fn with_common_scale(&self, c: f64) -> Self {
        Curve {
            label: self.label.clone(),
            coordinates: self
                .coordinates
                .iter()
                .map(|g| g.with_log_a(g.log_a + c))
                .collect(),
        }
    }

    /// `f(z)` as a normalized projective point.
    pub fn evaluate(&self, z: LogPoint) -> Result<ProjectivePoint> {
        let values: Vec<(f64, f64)> = self.coordinates.iter().map(|c| c.evaluate_log(z)).collect();
        ProjectivePoint::from_log_polar(&values).ok_or_else(|| {
            Error::invariant(
                "no common zeros",
                format!("all coordinates vanish at (t = {}, theta = {})", z.t, z.theta),
            )
        })
    }
}

fn find_common_zero(coords: &[CanonicalCoordinate], eps: f64) -> Option<LogPoint> {
    let pivot = coords.iter().min_by_key(|c| c.zeros.len())?;
    pivot.zeros.iter().map(|z| z.point).find(|p| {
        coords
            .iter()
            .all(|c| c.distance_to_zeros(p) <= eps)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_wrap_into_half_open_interval() {
        assert_eq!(wrap_angle(-PI), PI);
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn cylinder_distance_examples() {
        let o = LogPoint::new(0.0, 0.0);
        assert_eq!(cylinder_distance(&o, &o), 0.0);
        assert_eq!(cylinder_distance(&o, &LogPoint::new(0.0, PI)), PI);
        let p = LogPoint::new(2f64.ln(), 0.0);
        assert_eq!(cylinder_distance(&p, &o), 2f64.ln());
        // across the seam
        let a = LogPoint::new(0.0, PI - 0.1);
        let b = LogPoint::new(0.0, -PI + 0.1);
        assert!((cylinder_distance(&a, &b) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn counting_function_closed_form() {
        let g = CanonicalCoordinate::monomial(0.0, 1);
        let n = g.counting_function();
        assert_eq!(n.eval(3.0), 3.0);

        let l2 = 2f64.ln();
        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(l2, 0.0)]).unwrap();
        let n = g.counting_function();
        assert!((n.eval(4f64.ln()) - l2).abs() < 1e-15);
        assert_eq!(n.eval(0.0), 0.0);

        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(-l2, 0.0)]).unwrap();
        let n = g.counting_function();
        assert_eq!(n.eval(0.0), 0.0);
        assert!((n.eval(-2.0 * l2) - l2).abs() < 1e-15);
        assert_eq!(n.right_derivative(-10.0), -1);
    }

    #[test]
    fn zero_at_unit_circle_counts_on_the_right() {
        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(0.0, 1.0)]).unwrap();
        let n = g.counting_function();
        assert_eq!(n.right_derivative(0.0), 1);
        assert_eq!(n.left_slope(), 0);
    }

    #[test]
    fn annulus_counts() {
        let g = CanonicalCoordinate::new(
            0.0,
            0.0,
            0,
            vec![Zero::simple(0.0, 0.0), Zero::simple(1.0, 0.0), Zero::simple(2.0, 0.0)],
        )
        .unwrap();
        assert_eq!(g.zero_count_in_annulus(0.5, 2.0), 2);
        assert_eq!(g.zero_count_in_annulus(2.5, 3.0), 0);
        assert_eq!(g.zero_count_in_annulus(-1.0, 0.0), 1);
    }

    #[test]
    fn duplicate_zeros_merge() {
        let g = CanonicalCoordinate::new(
            0.0,
            0.0,
            0,
            vec![Zero::simple(1.0, 0.5), Zero::new(1.0, 0.5, 2)],
        )
        .unwrap();
        assert_eq!(g.zeros().len(), 1);
        assert_eq!(g.zeros()[0].multiplicity, 3);
    }

    #[test]
    fn curve_invariants() {
        let z = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(1.0, 0.0)]).unwrap();
        let err = Curve::new("c", vec![z.clone(), z.clone()]).unwrap_err();
        assert!(matches!(err, Error::ViolatedInvariant { invariant: "no common zeros", .. }));

        let err = Curve::new("c", vec![z.with_m(1), z.with_m(2)]).unwrap_err();
        assert!(matches!(err, Error::ViolatedInvariant { invariant: "min_j m_j = 0", .. }));

        let (c, shift) = Curve::normalized(
            "c",
            vec![CanonicalCoordinate::monomial(0.0, 2), CanonicalCoordinate::monomial(0.0, 3)],
        )
        .unwrap();
        assert_eq!(shift, 2);
        assert_eq!(c.coordinates()[1].m(), 1);

        assert!(Curve::new("c", vec![z]).is_err());
    }

    #[test]
    fn evaluate_curve_examples() {
        let c = Curve::new(
            "id",
            vec![CanonicalCoordinate::monomial(0.0, 0), CanonicalCoordinate::monomial(0.0, 1)],
        )
        .unwrap();
        let p = c.evaluate(LogPoint::new(0.0, 0.0)).unwrap();
        assert!((p.coords()[0].norm() - 1.0).abs() < 1e-15);
        assert!((p.coords()[1].norm() - 1.0).abs() < 1e-15);

        let p = c.evaluate(LogPoint::new(50.0, 0.0)).unwrap();
        assert!((p.coords()[0].norm() - (-50f64).exp()).abs() < 1e-30);
        assert_eq!(p.coords()[1].norm(), 1.0);

        let g0 = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(0.5, 0.25)]).unwrap();
        let c = Curve::new("z", vec![g0, CanonicalCoordinate::monomial(0.0, 0)]).unwrap();
        let p = c.evaluate(LogPoint::new(0.5, 0.25)).unwrap();
        assert_eq!(p.coords()[0].norm(), 0.0);
    }
}
