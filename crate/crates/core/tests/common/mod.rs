//! Shared corpus and independent oracles for the integration suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use normcurve::criteria::DISC_TOL;
use normcurve::generators::{random_curve, RandomCurveParams};
use normcurve::{CanonicalCoordinate, Curve, PLConvex, Window};

/// Seeded random curves: `n` alternates between 1 and 2, zeros in `[−5, 5]`.
pub fn corpus(count: u64) -> Vec<Curve> {
    (0..count)
        .map(|seed| {
            random_curve(&RandomCurveParams {
                n: 1 + (seed % 2) as usize,
                density: 1.0,
                window: (-5.0, 5.0),
                seed,
                max_zeros: 20,
            })
            .expect("corpus parameters are valid")
        })
        .collect()
}

/// `log|A| + m t + Σ_{τ≥0} μ (t − τ)⁺ + Σ_{τ<0} μ (τ − t)⁺`, straight from the zero list.
pub fn counting_closed_form(g: &CanonicalCoordinate, t: f64) -> f64 {
    g.log_a()
        + g.m() as f64 * t
        + g.zeros()
            .iter()
            .map(|z| {
                let tau = z.point.t;
                let mu = z.multiplicity as f64;
                if tau >= 0.0 {
                    mu * (t - tau).max(0.0)
                } else {
                    mu * (tau - t).max(0.0)
                }
            })
            .sum::<f64>()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Largest `|slope|` of `f` anywhere.
pub fn max_abs_slope(f: &PLConvex) -> f64 {
    f.slopes().iter().map(|s| s.unsigned_abs()).max().unwrap_or(0) as f64
}

/// Brute-force `sup f(t) − f(s) − f'(s)(t − s)` over an `n × n` grid of
/// `s ∈ window` and offsets `t − s ∈ [−a, a]`, with `t` kept in the window.
/// The derivative is a forward difference of `eval`, i.e. the right
/// derivative once rounded to the nearest integer.
pub fn defect_grid(f: &PLConvex, a: f64, w: Window, n: usize) -> f64 {
    let mut best: f64 = 0.0;
    for s in linspace(w.lo, w.hi, n) {
        let h = 1e-7;
        let slope = ((f.eval(s + h) - f.eval(s)) / h).round();
        let fs = f.eval(s);
        for d in linspace(-a, a, n) {
            let t = s + d;
            if t < w.lo || t > w.hi {
                continue;
            }
            best = best.max(f.eval(t) - fs - slope * d);
        }
    }
    best
}

/// Brute-force `sup (f(t) − f(s) − f'(s)(t − s)) / (1 + (t − s)²)` over an `n × n` grid.
pub fn quadratic_grid(f: &PLConvex, w: Window, n: usize) -> f64 {
    let mut best: f64 = 0.0;
    let ts: Vec<f64> = linspace(w.lo, w.hi, n).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| f.eval(t)).collect();
    for (i, &s) in ts.iter().enumerate() {
        let h = 1e-7;
        let slope = ((f.eval(s + h) - f.eval(s)) / h).round();
        for (j, &t) in ts.iter().enumerate() {
            let d = t - s;
            best = best.max((vals[j] - vals[i] - slope * d) / (1.0 + d * d));
        }
    }
    best
}

/// Sampling oracle for the cluster constant.
///
/// The `t` samples are `samples` equispaced points of the window plus the
/// places where the gap can peak: zero moduli, disc poles `τ ± δ`, the
/// intersection points of discs around zeros of different coordinates, and
/// crossings of two counting functions. At each `t`, every zero within `δ`
/// contributes a closed arc of angles; the oracle visits every arc endpoint,
/// finds the clustered set `I` by direct distance tests and records
/// `max_j N_j(t) − max_{j∉I} N_j(t)` from the closed-form counting functions.
pub fn third_condition_oracle(curve: &Curve, delta: f64, w: Window, samples: usize) -> f64 {
    let coords = curve.coordinates();
    let mut ts: Vec<f64> = linspace(w.lo, w.hi, samples).collect();
    let zeros: Vec<(usize, f64, f64)> = coords
        .iter()
        .enumerate()
        .flat_map(|(j, g)| g.zeros().iter().map(move |z| (j, z.point.t, z.point.theta)))
        .collect();
    for &(_, t, _) in &zeros {
        ts.extend([t - delta, t, t + delta]);
    }
    for (a, &(_, ta, tha)) in zeros.iter().enumerate() {
        for &(_, tb, thb) in &zeros[a + 1..] {
            let dth = (thb - tha + PI).rem_euclid(2.0 * PI) - PI;
            let d = (tb - ta).hypot(dth);
            if d > 2.0 * delta || d == 0.0 {
                continue;
            }
            let h = (delta * delta - d * d / 4.0).max(0.0).sqrt();
            let mid = 0.5 * (ta + tb);
            ts.extend([mid - h * dth / d, mid + h * dth / d]);
        }
    }
    let mut knots: Vec<f64> = zeros.iter().map(|z| z.1).chain([w.lo, w.hi]).collect();
    knots.sort_by(f64::total_cmp);
    for (i, gi) in coords.iter().enumerate() {
        for gj in &coords[i + 1..] {
            let diff = |t: f64| counting_closed_form(gi, t) - counting_closed_form(gj, t);
            for k in knots.windows(2) {
                let (d0, d1) = (diff(k[0]), diff(k[1]));
                if d0 * d1 < 0.0 {
                    ts.push(k[0] + (k[1] - k[0]) * d0 / (d0 - d1));
                }
            }
        }
    }
    ts.retain(|&t| t >= w.lo && t <= w.hi);

    let mut best: f64 = 0.0;
    for t in ts {
        let mut thetas = Vec::new();
        for g in coords {
            for z in g.zeros() {
                let dt = (z.point.t - t).abs();
                if dt <= delta + DISC_TOL {
                    let half = (delta * delta - dt * dt).max(0.0).sqrt();
                    thetas.push(z.point.theta - half);
                    thetas.push(z.point.theta + half);
                }
            }
        }
        if thetas.is_empty() {
            continue;
        }
        let n: Vec<f64> = coords.iter().map(|g| counting_closed_form(g, t)).collect();
        let env = n.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for &theta in &thetas {
            let clustered = |g: &CanonicalCoordinate| {
                g.zeros().iter().any(|z| {
                    let dth = (z.point.theta - theta + PI).rem_euclid(2.0 * PI) - PI;
                    (z.point.t - t).hypot(dth) <= delta + DISC_TOL
                })
            };
            let rest = coords
                .iter()
                .zip(&n)
                .filter(|(g, _)| !clustered(g))
                .map(|(_, &v)| v)
                .fold(f64::NEG_INFINITY, f64::max);
            best = best.max(env - rest);
        }
    }
    best
}
