//! The rescaled family `z ↦ f(λz)` at desk scale.
//!
//! For `λ` on a ladder of log-moduli the coordinates are renormalized by the
//! zero-free factor `h(z) = exp(−N(0,F_λ)) z^{−N'(0,F_λ)}`, after which each
//! one should either settle to a finite limit or tend to zero. The trace
//! records the per-λ extremes of `log|h g_j(λz)|` on an annulus grid and
//! classifies every coordinate from its tail.

mod bound;
mod probe;

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::curve::{Curve, LogPoint};
use crate::error::{Error, Result};
use crate::fmt::{decimal, JsonNum};
use crate::plc::{LinearFn, PLConvex};

pub use self::bound::{product_bound_check, ProductBound, BOUND_SAMPLES};
pub use self::probe::{
    condition2_samples, equicontinuity_probe, lemma1_condition2_probe, Condition2Outcome,
    Equicontinuity, ProbeSample,
};

/// `h(z) = exp(−c) z^{−p}` with `c = N(0, F_λ)` and `p = N'(0, F_λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Normalizer {
    pub c: f64,
    pub p: i64,
}

impl Normalizer {
    pub fn from_envelope(envelope: &PLConvex, log_lambda: f64) -> Self {
        let shifted = envelope.shift(log_lambda);
        Normalizer {
            c: shifted.eval(0.0),
            p: shifted.right_derivative(0.0),
        }
    }

    /// `log|h(z)|` at a point with log-modulus `t`.
    pub fn log_modulus(&self, t: f64) -> f64 {
        -self.c - self.p as f64 * t
    }

    /// Envelope of the normalized family member: `N(t + log λ, F) − c − p t`.
    /// Its value and right slope at `t = 0` are both exactly 0.
    pub fn normalized_envelope(&self, envelope: &PLConvex, log_lambda: f64) -> PLConvex {
        envelope
            .shift(log_lambda)
            .reanchored(0.0)
            .subtract_linear(LinearFn::new(self.p, self.c))
    }
}

pub fn normalizer(curve: &Curve, log_lambda: f64) -> Normalizer {
    Normalizer::from_envelope(&curve.envelope(), log_lambda)
}

/// Evaluation grid on the annulus `t_lo ≤ t ≤ t_hi` (in the rescaled variable).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusGrid {
    pub t_lo: f64,
    pub t_hi: f64,
    pub n_t: usize,
    pub n_theta: usize,
}

impl AnnulusGrid {
    pub fn new(t_lo: f64, t_hi: f64, n_t: usize, n_theta: usize) -> Result<Self> {
        if !(t_lo.is_finite() && t_hi.is_finite()) || t_lo >= t_hi {
            return Err(Error::invalid(format!(
                "annulus [{t_lo}, {t_hi}] must be finite and nondegenerate"
            )));
        }
        if n_t < 8 || n_theta < 8 {
            return Err(Error::invalid(format!(
                "grid {n_t}x{n_theta} is too coarse; need at least 8x8"
            )));
        }
        Ok(AnnulusGrid {
            t_lo,
            t_hi,
            n_t,
            n_theta,
        })
    }

    /// `t` runs over `n_t` equispaced values including both ends; `θ` over
    /// `n_θ` equispaced angles ending at `π` (so `0` is included when `n_θ` is even).
    pub fn points(&self) -> impl Iterator<Item = LogPoint> + '_ {
        let dt = (self.t_hi - self.t_lo) / (self.n_t - 1) as f64;
        (0..self.n_t).flat_map(move |i| {
            let t = if i + 1 == self.n_t {
                self.t_hi
            } else {
                self.t_lo + i as f64 * dt
            };
            (0..self.n_theta).map(move |l| {
                LogPoint::new(t, -PI + TAU * (l + 1) as f64 / self.n_theta as f64)
            })
        })
    }

    pub fn point_count(&self) -> usize {
        self.n_t * self.n_theta
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceConfig {
    pub grid: AnnulusGrid,
    /// A coordinate whose log-sup stays below `−threshold_vanish` is treated as tending to zero.
    pub threshold_vanish: f64,
    /// Largest pointwise change between successive ladder steps for convergence.
    pub tol_conv: f64,
    /// Number of trailing ladder steps used for classification.
    pub tail: usize,
}

impl TraceConfig {
    pub fn new(grid: AnnulusGrid) -> Self {
        TraceConfig {
            grid,
            threshold_vanish: 20.0,
            tol_conv: 1e-3,
            tail: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Classification {
    Convergent,
    Vanishing,
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateTrace {
    pub j: usize,
    pub class: Classification,
    /// Per ladder step: sup of `log|h g_j(λz)|` over the grid.
    pub sup: Vec<f64>,
    /// Per ladder step: inf over the grid (`−∞` if a grid point hits a zero).
    pub inf: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTrace {
    pub log_lambdas: Vec<f64>,
    pub normalizers: Vec<Normalizer>,
    pub config: TraceConfig,
    pub coordinates: Vec<CoordinateTrace>,
}

pub(crate) fn check_ladder(log_lambdas: &[f64]) -> Result<()> {
    if log_lambdas.is_empty() {
        return Err(Error::invalid("the lambda ladder is empty"));
    }
    if log_lambdas.iter().any(|l| !l.is_finite()) {
        return Err(Error::invalid("lambda ladder entries must be finite"));
    }
    Ok(())
}

/// `start, start + step, …` with `count` entries.
pub fn ladder(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start + step * k as f64).collect()
}

pub fn normalized_trace(
    curve: &Curve,
    log_lambdas: &[f64],
    config: &TraceConfig,
) -> Result<FamilyTrace> {
    check_ladder(log_lambdas)?;
    let envelope = curve.envelope();
    let grid: Vec<LogPoint> = config.grid.points().collect();
    let n = curve.coordinates().len();

    let normalizers: Vec<Normalizer> = log_lambdas
        .iter()
        .map(|&l| Normalizer::from_envelope(&envelope, l))
        .collect();

    // values[j][k][i]
    let mut values = vec![vec![Vec::with_capacity(grid.len()); log_lambdas.len()]; n];
    for (k, (&log_lambda, h)) in log_lambdas.iter().zip(&normalizers).enumerate() {
        for z in &grid {
            let shifted = LogPoint::new(z.t + log_lambda, z.theta);
            let base = h.log_modulus(z.t);
            for (j, g) in curve.coordinates().iter().enumerate() {
                values[j][k].push(base + g.log_modulus(shifted));
            }
        }
    }

    let coordinates = values
        .iter()
        .enumerate()
        .map(|(j, per_k)| {
            let sup: Vec<f64> = per_k
                .iter()
                .map(|v| v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
                .collect();
            let inf: Vec<f64> = per_k
                .iter()
                .map(|v| v.iter().copied().fold(f64::INFINITY, f64::min))
                .collect();
            let class = classify(per_k, &sup, config);
            CoordinateTrace { j, class, sup, inf }
        })
        .collect();

    Ok(FamilyTrace {
        log_lambdas: log_lambdas.to_vec(),
        normalizers,
        config: *config,
        coordinates,
    })
}

/// Classification from the last `tail` ladder steps:
///
/// 1. every tail sup below `−threshold_vanish`: VANISHING;
/// 2. successive pointwise changes at most `tol_conv` wherever the values are
///    finite and above `−threshold_vanish`: CONVERGENT;
/// 3. tail sups strictly decreasing, each step by more than `tol_conv`: VANISHING;
/// 4. otherwise UNDECIDED.
fn classify(per_k: &[Vec<f64>], sup: &[f64], cfg: &TraceConfig) -> Classification {
    let k = per_k.len();
    let tail = cfg.tail.max(2).min(k);
    let from = k - tail;
    let floor = -cfg.threshold_vanish;

    if sup[from..].iter().all(|&s| s < floor) {
        return Classification::Vanishing;
    }
    if tail >= 2 {
        let mut compared = false;
        let mut steady = true;
        for w in per_k[from..].windows(2) {
            for (&a, &b) in w[0].iter().zip(&w[1]) {
                if a.is_finite() && b.is_finite() && a.max(b) > floor {
                    compared = true;
                    if (a - b).abs() > cfg.tol_conv {
                        steady = false;
                    }
                }
            }
        }
        if compared && steady {
            return Classification::Convergent;
        }
        if sup[from..].windows(2).all(|w| w[0] - w[1] > cfg.tol_conv) {
            return Classification::Vanishing;
        }
    }
    Classification::Undecided
}

#[derive(Serialize)]
struct CoordinateJson {
    j: usize,
    class: Classification,
    sup: Vec<JsonNum>,
    inf: Vec<JsonNum>,
}

#[derive(Serialize)]
struct TraceJson {
    lambdas: Vec<JsonNum>,
    annulus: [JsonNum; 2],
    grid: [usize; 2],
    threshold_vanish: JsonNum,
    tol_conv: JsonNum,
    tail: usize,
    h_step: Option<JsonNum>,
    coordinates: Vec<CoordinateJson>,
    #[serde(rename = "L_max")]
    l_max: Option<JsonNum>,
    #[serde(rename = "L_per_lambda")]
    l_per_lambda: Vec<JsonNum>,
}

fn nums(v: &[f64]) -> Vec<JsonNum> {
    v.iter().copied().map(JsonNum).collect()
}

impl FamilyTrace {
    pub fn class_of(&self, j: usize) -> Classification {
        self.coordinates[j].class
    }

    /// Trace JSON, optionally merged with an equicontinuity probe on the same ladder.
    /// Grids and tolerances are included so runs can be reproduced.
    pub fn to_json(&self, probe: Option<&Equicontinuity>) -> String {
        let g = self.config.grid;
        let doc = TraceJson {
            lambdas: nums(&self.log_lambdas),
            annulus: [JsonNum(g.t_lo), JsonNum(g.t_hi)],
            grid: [g.n_t, g.n_theta],
            threshold_vanish: JsonNum(self.config.threshold_vanish),
            tol_conv: JsonNum(self.config.tol_conv),
            tail: self.config.tail,
            h_step: probe.map(|p| JsonNum(p.h_step)),
            coordinates: self
                .coordinates
                .iter()
                .map(|c| CoordinateJson {
                    j: c.j,
                    class: c.class,
                    sup: nums(&c.sup),
                    inf: nums(&c.inf),
                })
                .collect(),
            l_max: probe.map(|p| JsonNum(p.l_max)),
            l_per_lambda: probe.map(|p| nums(&p.per_lambda)).unwrap_or_default(),
        };
        serde_json::to_string_pretty(&doc).expect("trace serializes")
    }

    /// Plot-ready CSV `log_lambda,L,sup_0,…,sup_n`; `L` is empty without a probe.
    pub fn to_csv(&self, probe: Option<&Equicontinuity>) -> String {
        let mut out = String::from("log_lambda,L");
        for c in &self.coordinates {
            out.push_str(&format!(",sup_{}", c.j));
        }
        out.push('\n');
        for (k, &l) in self.log_lambdas.iter().enumerate() {
            out.push_str(&decimal(l));
            out.push(',');
            if let Some(p) = probe {
                out.push_str(&decimal(p.per_lambda[k]));
            }
            for c in &self.coordinates {
                out.push(',');
                out.push_str(&decimal(c.sup[k]));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CanonicalCoordinate;

    fn identity_curve() -> Curve {
        Curve::new(
            "id",
            vec![CanonicalCoordinate::monomial(0.0, 0), CanonicalCoordinate::monomial(0.0, 1)],
        )
        .unwrap()
    }

    fn cfg() -> TraceConfig {
        let l2 = 2f64.ln();
        TraceConfig::new(AnnulusGrid::new(-l2, l2, 16, 16).unwrap())
    }

    #[test]
    fn normalizer_examples() {
        let c = identity_curve();
        assert_eq!(normalizer(&c, 5.0), Normalizer { c: 5.0, p: 1 });
        assert_eq!(normalizer(&c, -5.0), Normalizer { c: 0.0, p: 0 });
        let flat = Curve::new(
            "flat",
            vec![CanonicalCoordinate::monomial(0.0, 0), CanonicalCoordinate::monomial(0.0, 0)],
        )
        .unwrap();
        assert_eq!(normalizer(&flat, 0.0), Normalizer { c: 0.0, p: 0 });
    }

    #[test]
    fn normalized_envelope_is_flat_at_origin() {
        let c = identity_curve();
        let env = c.envelope();
        for l in [-3.0, 0.0, 0.7, 12.5] {
            let h = Normalizer::from_envelope(&env, l);
            let e = h.normalized_envelope(&env, l);
            assert_eq!(e.eval(0.0), 0.0);
            assert_eq!(e.right_derivative(0.0), 0);
        }
    }

    #[test]
    fn identity_curve_trace() {
        let trace = normalized_trace(&identity_curve(), &ladder(0.0, 1.0, 11), &cfg()).unwrap();
        assert_eq!(trace.class_of(0), Classification::Vanishing);
        assert_eq!(trace.class_of(1), Classification::Convergent);
        // h g_1 ≡ 1 and h g_0 = e^{-k} z^{-1}
        for k in 0..11 {
            assert!(trace.coordinates[1].sup[k].abs() < 1e-12);
            let expect = -(k as f64) + 2f64.ln();
            assert!((trace.coordinates[0].sup[k] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_curve_is_convergent() {
        let c = Curve::new(
            "ones",
            vec![CanonicalCoordinate::monomial(0.0, 0); 3],
        )
        .unwrap();
        let trace = normalized_trace(&c, &ladder(-4.0, 2.0, 5), &cfg()).unwrap();
        for ct in &trace.coordinates {
            assert_eq!(ct.class, Classification::Convergent);
            assert!(ct.sup.iter().chain(&ct.inf).all(|v| v.abs() < 1e-15));
        }
    }

    #[test]
    fn rejects_empty_ladder_and_tiny_grid() {
        assert!(normalized_trace(&identity_curve(), &[], &cfg()).is_err());
        assert!(AnnulusGrid::new(0.0, 1.0, 4, 16).is_err());
        assert!(AnnulusGrid::new(1.0, 1.0, 16, 16).is_err());
    }

    #[test]
    fn grid_includes_unit_angle_and_ends() {
        let g = AnnulusGrid::new(-1.0, 1.0, 9, 8).unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 72);
        assert!(pts.iter().any(|p| p.t == 0.0 && p.theta == 0.0));
        assert_eq!(pts.last().unwrap().t, 1.0);
    }
}
