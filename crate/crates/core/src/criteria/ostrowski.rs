//! The classical four conditions for `n = 1`, measured on finite data.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::curve::{CanonicalCoordinate, Curve, Zero};
use crate::error::{Error, Result};
use crate::fmt::JsonNum;
use crate::plc::{Window, KNOT_EPS};

/// Ring boundaries closer than this to a zero modulus are treated as
/// excluding it, so that zeros spaced exactly `log 2` apart share no ring.
pub const RING_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OstrowskiReport {
    /// a) largest `|#zeros(g₀) − #zeros(g₁)|` over rings inside the window.
    pub a_bound: u64,
    /// b) largest zero count of one coordinate in a ring `r < |z| < 2r`.
    pub b_bound: u64,
    /// c) smallest cylinder distance between a zero of g₀ and a zero of g₁.
    pub c_min_dist: f64,
    /// d) smallest `C ≥ 0` with `N(|w|, g_j) ≤ N(|w|, g_{1−j}) + C` at every zero `w` of `g_j`.
    pub d_constant: f64,
}

#[derive(Serialize)]
pub(crate) struct OstrowskiJson {
    a_bound: u64,
    b_bound: u64,
    c_min_dist: JsonNum,
    d_constant: JsonNum,
}

impl From<&OstrowskiReport> for OstrowskiJson {
    fn from(r: &OstrowskiReport) -> Self {
        OstrowskiJson {
            a_bound: r.a_bound,
            b_bound: r.b_bound,
            c_min_dist: JsonNum(r.c_min_dist),
            d_constant: JsonNum(r.d_constant),
        }
    }
}

fn zeros_in(c: &CanonicalCoordinate, w: Window) -> impl Iterator<Item = &Zero> {
    c.zeros().iter().filter(move |z| w.contains(z.point.t))
}

pub fn ostrowski_check(curve: &Curve, window: Window) -> Result<OstrowskiReport> {
    if curve.dimension() != 1 {
        return Err(Error::invalid(format!(
            "Ostrowski conditions need n = 1, curve has n = {}",
            curve.dimension()
        )));
    }
    let g = curve.coordinates();
    Ok(OstrowskiReport {
        a_bound: count_imbalance(&g[0], &g[1], window),
        b_bound: ring_bound(&g[0], window).max(ring_bound(&g[1], window)),
        c_min_dist: separation(&g[0], &g[1], window),
        d_constant: comparability(g, window),
    })
}

/// Spread of the prefix difference `#zeros(g₀) − #zeros(g₁)` over
/// `(lo, t]`; every ring `(t₁, t₂]` is a difference of two prefixes.
fn count_imbalance(g0: &CanonicalCoordinate, g1: &CanonicalCoordinate, w: Window) -> u64 {
    let mut events: Vec<(f64, i64)> = zeros_in(g0, w)
        .map(|z| (z.point.t, z.multiplicity as i64))
        .chain(zeros_in(g1, w).map(|z| (z.point.t, -(z.multiplicity as i64))))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (mut d, mut lo, mut hi) = (0i64, 0i64, 0i64);
    let mut i = 0;
    while i < events.len() {
        // zeros on one circle cannot be separated by a ring
        let t = events[i].0;
        while i < events.len() && events[i].0 - t <= KNOT_EPS {
            d += events[i].1;
            i += 1;
        }
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (hi - lo) as u64
}

/// Largest zero count (with multiplicity) in an open t-interval of length `log 2`.
pub fn ring_bound(g: &CanonicalCoordinate, w: Window) -> u64 {
    let zs: Vec<&Zero> = zeros_in(g, w).collect();
    let mut best = 0u64;
    let mut j = 0;
    let mut count = 0u64;
    for i in 0..zs.len() {
        if j < i {
            j = i;
            count = 0;
        }
        while j < zs.len() && zs[j].point.t - zs[i].point.t < LN_2 - RING_TOL {
            count += zs[j].multiplicity as u64;
            j += 1;
        }
        best = best.max(count);
        count -= zs[i].multiplicity as u64;
    }
    best
}

fn separation(g0: &CanonicalCoordinate, g1: &CanonicalCoordinate, w: Window) -> f64 {
    let g1w = CanonicalCoordinate::new(0.0, 0.0, 0, zeros_in(g1, w).copied().collect())
        .expect("zeros already validated");
    zeros_in(g0, w)
        .map(|z| g1w.distance_to_zeros(&z.point))
        .fold(f64::INFINITY, f64::min)
}

fn comparability(g: &[CanonicalCoordinate], w: Window) -> f64 {
    let n = [g[0].counting_function(), g[1].counting_function()];
    let mut c: f64 = 0.0;
    for j in 0..2 {
        for z in zeros_in(&g[j], w) {
            let t = z.point.t;
            c = c.max(n[j].eval(t) - n[1 - j].eval(t));
        }
    }
    c
}
