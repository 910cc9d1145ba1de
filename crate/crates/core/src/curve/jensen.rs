//! Circle means of `log|g|` by quadrature, compared with the closed-form
//! counting function.

use std::f64::consts::{PI, TAU};

use super::{CanonicalCoordinate, Curve};
use crate::plc::Window;

/// Quadrature nodes on each circle.
pub const JENSEN_NODES: usize = 4096;
/// Circles closer than this (in `t`) to a zero modulus are skipped.
pub const ZERO_CLEARANCE: f64 = 0.01;

/// `(1/2π) ∫ log|g(e^{t+iθ})| dθ` by the periodic trapezoid rule.
///
/// Each factor `log|1 − e^{u+iφ}|` is evaluated as in [`CanonicalCoordinate::log_modulus`],
/// with the half-angle sines taken from per-node tables and the factors at a
/// node multiplied before a single logarithm.
pub fn circle_mean(g: &CanonicalCoordinate, t: f64, nodes: usize) -> f64 {
    let half: Vec<(f64, f64)> = (0..nodes)
        .map(|l| (0.5 * (-PI + TAU * l as f64 / nodes as f64)).sin_cos())
        .collect();
    // per zero: (expm1², 4e, multiplicity, sin θ/2, cos θ/2)
    let mut offset = g.log_a() + g.m() as f64 * t;
    let factors: Vec<(f64, f64, i32, f64, f64)> = g
        .zeros()
        .iter()
        .map(|z| {
            let tau = z.point.t;
            let u = if tau < 0.0 { tau - t } else { t - tau };
            let mu = z.multiplicity as i32;
            let v = if u > 0.0 {
                offset += mu as f64 * u;
                -u
            } else {
                u
            };
            let em1 = v.exp_m1();
            let (s, c) = (0.5 * z.point.theta).sin_cos();
            (em1 * em1, 4.0 * v.exp(), mu, s, c)
        })
        .collect();
    let mut log_sum = 0.0;
    for &(sn, cn) in &half {
        let mut prod = 1.0f64;
        for &(base, coef, mu, s, c) in &factors {
            let sine = sn * c - cn * s;
            prod *= (base + coef * sine * sine).powi(mu);
            if !(1e-250..=1e250).contains(&prod) {
                log_sum += prod.ln();
                prod = 1.0;
            }
        }
        log_sum += prod.ln();
    }
    offset + 0.5 * log_sum / nodes as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct JensenReport {
    pub max_error: f64,
    /// `(t, j)` where the largest error occurred.
    pub worst: Option<(f64, usize)>,
    pub checked: Vec<f64>,
    pub skipped: Vec<f64>,
    pub nodes: usize,
}

/// Compares quadrature means with `N(t, g_j)` at `points` equispaced `t` in
/// `window`, skipping circles within [`ZERO_CLEARANCE`] of a zero.
pub fn jensen_check(curve: &Curve, window: Window, points: usize) -> JensenReport {
    let counting = curve.counting_functions();
    let near_zero = |t: f64| {
        curve.coordinates().iter().any(|g| {
            !g.zeros_in_t_range(t - ZERO_CLEARANCE, t + ZERO_CLEARANCE).is_empty()
        })
    };
    let mut report = JensenReport {
        max_error: 0.0,
        worst: None,
        checked: Vec::new(),
        skipped: Vec::new(),
        nodes: JENSEN_NODES,
    };
    let steps = points.max(2) - 1;
    for i in 0..=steps {
        let t = window.lo + window.len() * i as f64 / steps as f64;
        if near_zero(t) {
            report.skipped.push(t);
            continue;
        }
        report.checked.push(t);
        for (j, (g, n)) in curve.coordinates().iter().zip(&counting).enumerate() {
            let err = (circle_mean(g, t, JENSEN_NODES) - n.eval(t)).abs();
            if err > report.max_error || report.worst.is_none() {
                report.max_error = report.max_error.max(err);
                report.worst = Some((t, j));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{LogPoint, Zero};

    #[test]
    fn ramp_at_log_four() {
        let l2 = 2f64.ln();
        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(l2, 0.0)]).unwrap();
        let mean = circle_mean(&g, 2.0 * l2, JENSEN_NODES);
        assert!((mean - l2).abs() < 1e-12);
        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(-l2, 0.0)]).unwrap();
        assert!(circle_mean(&g, 0.0, JENSEN_NODES).abs() < 1e-12);
    }

    #[test]
    fn tabulated_mean_matches_the_evaluator() {
        let g = CanonicalCoordinate::new(
            0.4,
            0.0,
            2,
            vec![Zero::new(-1.5, 2.0, 2), Zero::simple(0.2, -0.7), Zero::simple(3.0, 3.1)],
        )
        .unwrap();
        for t in [-4.0, -1.3, 0.0, 0.5, 2.9, 7.0] {
            let direct: f64 = (0..512)
                .map(|l| g.log_modulus(LogPoint::new(t, -PI + TAU * l as f64 / 512.0)))
                .sum::<f64>()
                / 512.0;
            assert!((circle_mean(&g, t, 512) - direct).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn skips_circles_through_zeros() {
        let g = CanonicalCoordinate::new(0.0, 0.0, 0, vec![Zero::simple(0.0, 0.5)]).unwrap();
        let c = Curve::new("x", vec![g, CanonicalCoordinate::monomial(0.0, 1)]).unwrap();
        let r = jensen_check(&c, Window::new(-1.0, 1.0).unwrap(), 5);
        assert_eq!(r.skipped, vec![0.0]);
        assert_eq!(r.checked.len(), 4);
        assert!(r.max_error < 1e-10);
    }
}
