//! Empirical probes on the rescaled family: a Lipschitz estimate into the
//! Fubini–Study metric, and a sampled check of the cluster inequality.

use crate::curve::{fs_distance, Curve, LogPoint};
use crate::error::Result;

use super::{check_ladder, AnnulusGrid, Normalizer};

#[derive(Clone, Debug, PartialEq)]
pub struct Equicontinuity {
    pub h_step: f64,
    /// Largest `fs_distance / h_step` over every λ, grid point and neighbour.
    pub l_max: f64,
    pub per_lambda: Vec<f64>,
}

/// Finite-difference modulus of continuity of `z ↦ f(λz)` from the cylinder
/// metric to the Fubini–Study metric, at every point of `grid` and its four
/// neighbours at distance `h_step`.
pub fn equicontinuity_probe(
    curve: &Curve,
    log_lambdas: &[f64],
    grid: &AnnulusGrid,
    h_step: f64,
) -> Result<Equicontinuity> {
    check_ladder(log_lambdas)?;
    if !(h_step > 0.0 && h_step.is_finite()) {
        return Err(crate::Error::invalid(format!(
            "h_step = {h_step} must be positive"
        )));
    }
    let points: Vec<LogPoint> = grid.points().collect();
    let mut per_lambda = Vec::with_capacity(log_lambdas.len());
    for &l in log_lambdas {
        let mut worst: f64 = 0.0;
        for z in &points {
            let at = |dt: f64, dth: f64| curve.evaluate(LogPoint::new(z.t + l + dt, z.theta + dth));
            let centre = at(0.0, 0.0)?;
            for (dt, dth) in [(h_step, 0.0), (-h_step, 0.0), (0.0, h_step), (0.0, -h_step)] {
                worst = worst.max(fs_distance(&centre, &at(dt, dth)?) / h_step);
            }
        }
        per_lambda.push(worst);
    }
    Ok(Equicontinuity {
        h_step,
        l_max: per_lambda.iter().copied().fold(0.0, f64::max),
        per_lambda,
    })
}

/// One sampled centre with `log|h g_j(z₀)|` for every coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSample {
    pub center: LogPoint,
    pub log_values: Vec<f64>,
}

/// Normalized log-values of `f(λ·)` on `grid`, and the zeros of the rescaled
/// coordinates (a zero at `t = τ` moves to `τ − log λ`).
pub fn condition2_samples(
    curve: &Curve,
    log_lambda: f64,
    grid: &AnnulusGrid,
) -> (Vec<ProbeSample>, Vec<Vec<LogPoint>>) {
    let h = Normalizer::from_envelope(&curve.envelope(), log_lambda);
    let samples = grid
        .points()
        .map(|z| {
            let shifted = LogPoint::new(z.t + log_lambda, z.theta);
            ProbeSample {
                center: z,
                log_values: curve
                    .coordinates()
                    .iter()
                    .map(|g| h.log_modulus(z.t) + g.log_modulus(shifted))
                    .collect(),
            }
        })
        .collect();
    let zeros = curve
        .coordinates()
        .iter()
        .map(|g| {
            g.zeros()
                .iter()
                .map(|z| LogPoint::new(z.point.t - log_lambda, z.point.theta))
                .collect()
        })
        .collect();
    (samples, zeros)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Condition2Outcome {
    /// Smallest margin `max_{I'} + C − max_all` over the samples
    /// (`+∞` when `C` is infinite or there are no samples).
    Pass { slack: f64 },
    /// First sample where the inequality fails.
    Fail {
        witness: ProbeSample,
        clustered: Vec<usize>,
        excess: f64,
    },
}

/// Checks `max_j log|h g_j(z₀)| ≤ max_{j ∉ I} log|h g_j(z₀)| + C` at every
/// sample, where `I` holds the coordinates with a zero within `δ` of `z₀`.
pub fn lemma1_condition2_probe(
    samples: &[ProbeSample],
    zeros: &[Vec<LogPoint>],
    delta: f64,
    c: f64,
) -> Condition2Outcome {
    if c == f64::INFINITY {
        return Condition2Outcome::Pass {
            slack: f64::INFINITY,
        };
    }
    let mut slack = f64::INFINITY;
    for s in samples {
        let clustered: Vec<usize> = zeros
            .iter()
            .enumerate()
            .filter(|(_, zs)| zs.iter().any(|z| z.distance(&s.center) <= delta))
            .map(|(j, _)| j)
            .collect();
        let all = s.log_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let rest = s
            .log_values
            .iter()
            .enumerate()
            .filter(|(j, _)| !clustered.contains(j))
            .map(|(_, &v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        let margin = if rest == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            rest + c - all
        };
        if margin < 0.0 {
            return Condition2Outcome::Fail {
                witness: s.clone(),
                clustered,
                excess: -margin,
            };
        }
        slack = slack.min(margin);
    }
    Condition2Outcome::Pass { slack }
}
