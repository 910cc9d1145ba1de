//! Numeric guard for the circle-maximum bound on a normalized canonical product.

use std::f64::consts::{PI, TAU};

use crate::curve::{CanonicalCoordinate, LogPoint};
use crate::error::{Error, Result};

/// Number of equispaced angles sampled on the unit circle.
pub const BOUND_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductBound {
    /// Largest sampled `log|g(e^{iθ})|`.
    pub lhs: f64,
    /// `log|A| + ∫ n(t) dt / (1 + e^{|t|})` with `n` the unsigned zero count.
    pub rhs: f64,
    pub ok: bool,
}

/// Compares `max_θ log|g(e^{iθ})|` with the integrated zero-count bound.
///
/// A zero at `t = τ` contributes `∫_{|τ|}^∞ dt / (1 + e^t) = log(1 + e^{−|τ|})`
/// to the right-hand side, which is also the largest value of its factor on
/// the unit circle.
pub fn product_bound_check(g: &CanonicalCoordinate) -> Result<ProductBound> {
    if g.m() != 0 {
        return Err(Error::invalid(format!(
            "the product bound needs m = 0, coordinate has m = {}",
            g.m()
        )));
    }
    let lhs = (0..BOUND_SAMPLES)
        .map(|l| {
            let theta = -PI + TAU * (l + 1) as f64 / BOUND_SAMPLES as f64;
            g.log_modulus(LogPoint::new(0.0, theta))
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let rhs = g.log_a()
        + g.zeros()
            .iter()
            .map(|z| z.multiplicity as f64 * (-z.point.t.abs()).exp().ln_1p())
            .sum::<f64>();
    Ok(ProductBound {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-9,
    })
}
