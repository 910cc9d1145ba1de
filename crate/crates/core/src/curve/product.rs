//! Log-space evaluation of canonical products.

use super::{wrap_angle, CanonicalCoordinate, LogPoint};

/// `(log|1 − w|, arg(1 − w))` for `w = e^{u + iφ}`.
///
/// Uses `|1 − w|² = expm1(u)² + 4 e^u sin²(φ/2)`, which stays accurate near
/// `w = 1`, and factors out `−w` when `|w| > 1` so nothing overflows.
pub fn log_one_minus_exp(u: f64, phi: f64) -> (f64, f64) {
    let half = (0.5 * phi).sin();
    let sq = half * half;
    if u <= 0.0 {
        let e = u.exp();
        let em1 = u.exp_m1();
        let m2 = em1 * em1 + 4.0 * e * sq;
        let arg = (-e * phi.sin()).atan2(-em1 + 2.0 * e * sq);
        (0.5 * m2.ln(), arg)
    } else {
        let e = (-u).exp();
        let em1 = (-u).exp_m1();
        let m2 = em1 * em1 + 4.0 * e * sq;
        let arg = (-phi.sin()).atan2(em1 + 2.0 * sq);
        (u + 0.5 * m2.ln(), arg)
    }
}

fn log_abs_one_minus_exp(u: f64, phi: f64) -> f64 {
    let half = (0.5 * phi).sin();
    let sq = half * half;
    if u <= 0.0 {
        let em1 = u.exp_m1();
        0.5 * (em1 * em1 + 4.0 * u.exp() * sq).ln()
    } else {
        let em1 = (-u).exp_m1();
        u + 0.5 * (em1 * em1 + 4.0 * (-u).exp() * sq).ln()
    }
}

/// Exponent `u + iφ` of the factor variable: `z_k/z` for inner zeros,
/// `z/z_k` for zeros with `|z_k| ≥ 1`.
#[inline]
fn factor_exponent(zero: &LogPoint, z: &LogPoint) -> (f64, f64) {
    if zero.t < 0.0 {
        (zero.t - z.t, zero.theta - z.theta)
    } else {
        (z.t - zero.t, z.theta - zero.theta)
    }
}

pub(super) fn evaluate(c: &CanonicalCoordinate, z: LogPoint) -> (f64, f64) {
    let mut logmod = c.log_a + c.m as f64 * z.t;
    let mut arg = c.arg_a + c.m as f64 * z.theta;
    for zero in &c.zeros {
        let (u, phi) = factor_exponent(&zero.point, &z);
        let (lm, a) = log_one_minus_exp(u, phi);
        if lm == f64::NEG_INFINITY {
            return (f64::NEG_INFINITY, 0.0);
        }
        let mu = zero.multiplicity as f64;
        logmod += mu * lm;
        arg += mu * a;
    }
    (logmod, wrap_angle(arg))
}

pub(super) fn log_modulus(c: &CanonicalCoordinate, z: LogPoint) -> f64 {
    let mut logmod = c.log_a + c.m as f64 * z.t;
    for zero in &c.zeros {
        let (u, phi) = factor_exponent(&zero.point, &z);
        logmod += zero.multiplicity as f64 * log_abs_one_minus_exp(u, phi);
    }
    logmod
}
