//! Standard example curves and adversarial families, as finite truncations.

use std::f64::consts::{LN_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::curve::{wrap_angle, CanonicalCoordinate, Curve, Zero};
use crate::error::{Error, Result};

fn check_depth(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("truncation depth K must be at least 1"));
    }
    Ok(())
}

fn simple_coordinate(zeros: Vec<Zero>) -> CanonicalCoordinate {
    CanonicalCoordinate::new(0.0, 0.0, 0, zeros).expect("generated zeros are finite")
}

/// `g₀ = ∏ (1 − z e^{−iθ₀} / base^k)`, `g₁` likewise with `θ₁`, for `k = 0..=K`.
///
/// With `base = 2`, `θ₀ = 0`, `θ₁ = π` this truncates the pair
/// `∏(1 − 2^{−k} z)`, `∏(1 + 2^{−k} z)`.
pub fn geometric_pair(k: usize, base: f64, theta0: f64, theta1: f64) -> Result<Curve> {
    check_depth(k)?;
    if !(base > 1.0 && base.is_finite()) {
        return Err(Error::invalid(format!("base = {base} must exceed 1")));
    }
    if !theta0.is_finite() || !theta1.is_finite() {
        return Err(Error::invalid("angles must be finite"));
    }
    if wrap_angle(theta0 - theta1).abs() < 1e-12 {
        return Err(Error::invalid(
            "theta0 and theta1 coincide, so every zero would be common",
        ));
    }
    let step = base.ln();
    let coord = |theta: f64| {
        simple_coordinate((0..=k).map(|i| Zero::simple(i as f64 * step, theta)).collect())
    };
    Curve::new(
        format!("geometric_pair(K={k}, base={base})"),
        vec![coord(theta0), coord(theta1)],
    )
}

/// Clusters of `k` simple zeros at `t = 4^k log 2`, spread evenly in angle
/// starting from `θ = 1`, for `k = 1..=K`.
///
/// Ring counts reach `K` while the counting function stays well below `t^{3/2}`.
pub fn slow_growth_coordinate(k: usize) -> Result<CanonicalCoordinate> {
    check_depth(k)?;
    if k > 30 {
        return Err(Error::invalid(format!("K = {k} overflows the cluster radii")));
    }
    let zeros = (1..=k)
        .flat_map(|c| {
            let t = 4f64.powi(c as i32) * LN_2;
            (0..c).map(move |i| Zero::simple(t, 1.0 + TAU * i as f64 / c as f64))
        })
        .collect();
    Ok(simple_coordinate(zeros))
}

/// Three-coordinate curve `(g₀, g₁, g₂)`: the geometric pair with base 2
/// truncated at depth `4^K`, so its zeros cover every cluster of
/// [`slow_growth_coordinate`]`(K)`, which serves as `g₂`.
pub fn paper_counterexample(k: usize) -> Result<Curve> {
    let g2 = slow_growth_coordinate(k)?;
    let depth = 4usize
        .checked_pow(k as u32)
        .filter(|&d| d <= 1 << 20)
        .ok_or_else(|| Error::invalid(format!("K = {k} is too deep to truncate")))?;
    let pair = geometric_pair(depth, 2.0, 0.0, PI)?;
    let mut coords = pair.coordinates().to_vec();
    coords.push(g2);
    Curve::new(format!("paper_counterexample(K={k})"), coords)
}

/// Distance `ε_k` between the `k`-th zeros of the two colliding coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GapSchedule {
    /// `ε_k = scale / k`.
    Harmonic { scale: f64 },
    /// `ε_k = ε` for every `k`.
    Constant(f64),
}

impl GapSchedule {
    pub fn gap(&self, k: usize) -> f64 {
        match *self {
            GapSchedule::Harmonic { scale } => scale / k as f64,
            GapSchedule::Constant(eps) => eps,
        }
    }
}

/// Default distance between successive collision sites.
pub const COLLISION_SPACING: f64 = 4.0;

/// `g₀` with zeros at `(k·spacing, 0)` and `g₁` with zeros at
/// `(k·spacing + ε_k, 0)`, `k = 1..=K`.
pub fn colliding_pair(k: usize, gap: GapSchedule, spacing: f64) -> Result<Curve> {
    check_depth(k)?;
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::invalid(format!("spacing = {spacing} must be positive")));
    }
    let mut g0 = Vec::with_capacity(k);
    let mut g1 = Vec::with_capacity(k);
    for i in 1..=k {
        let eps = gap.gap(i);
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::invalid(format!(
                "gap at k = {i} is {eps}; a zero gap makes the zeros common"
            )));
        }
        if eps >= spacing {
            return Err(Error::invalid(format!(
                "gap at k = {i} is {eps}, which reaches the next collision site"
            )));
        }
        let t = i as f64 * spacing;
        g0.push(Zero::simple(t, 0.0));
        g1.push(Zero::simple(t + eps, 0.0));
    }
    Curve::new(
        format!("colliding_pair(K={k})"),
        vec![simple_coordinate(g0), simple_coordinate(g1)],
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomCurveParams {
    /// Projective dimension; the curve has `n + 1` coordinates.
    pub n: usize,
    /// Expected zeros per unit of `t`, per coordinate.
    pub density: f64,
    pub window: (f64, f64),
    pub seed: u64,
    /// Cap on the zeros of one coordinate.
    pub max_zeros: usize,
}

impl Default for RandomCurveParams {
    fn default() -> Self {
        RandomCurveParams {
            n: 1,
            density: 1.0,
            window: (-5.0, 5.0),
            seed: 0,
            max_zeros: 20,
        }
    }
}

/// Seeded random curve: a Poisson number of zeros per coordinate (capped at
/// `max_zeros`), uniform in `t` over the window and in `θ`, `log|A|` uniform in
/// `[−2, 2]` and `m = 0`. Draws with a common zero are discarded and redrawn.
pub fn random_curve(p: &RandomCurveParams) -> Result<Curve> {
    if p.n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(p.density > 0.0 && p.density.is_finite()) {
        return Err(Error::invalid(format!("density = {} must be positive", p.density)));
    }
    let (lo, hi) = p.window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid(format!("window [{lo}, {hi}] is degenerate")));
    }
    let poisson = Poisson::new(p.density * (hi - lo))
        .map_err(|e| Error::invalid(format!("zero-count distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    loop {
        let coords = (0..=p.n)
            .map(|_| {
                let count = (poisson.sample(&mut rng) as usize).min(p.max_zeros);
                let zeros = (0..count)
                    .map(|_| Zero::simple(rng.random_range(lo..hi), rng.random_range(-PI..PI)))
                    .collect();
                let log_a = rng.random_range(-2.0..=2.0);
                CanonicalCoordinate::new(log_a, 0.0, 0, zeros).expect("finite draws")
            })
            .collect();
        if let Ok(curve) = Curve::new(format!("random(seed={})", p.seed), coords) {
            return Ok(curve);
        }
    }
}

/// Named preset plus its parameters, as used by the `generate` subcommand.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    GeometricPair {
        k: usize,
        base: f64,
        theta0: f64,
        theta1: f64,
    },
    PaperCounterexample {
        k: usize,
    },
    CollidingPair {
        k: usize,
        gap: GapSchedule,
        spacing: f64,
    },
    Random(RandomCurveParams),
}

impl GeneratorSpec {
    pub const PRESETS: [&'static str; 4] = ["geometric", "counterexample", "colliding", "random"];

    pub fn build(&self) -> Result<Curve> {
        match *self {
            GeneratorSpec::GeometricPair {
                k,
                base,
                theta0,
                theta1,
            } => geometric_pair(k, base, theta0, theta1),
            GeneratorSpec::PaperCounterexample { k } => paper_counterexample(k),
            GeneratorSpec::CollidingPair { k, gap, spacing } => colliding_pair(k, gap, spacing),
            GeneratorSpec::Random(ref p) => random_curve(p),
        }
    }
}
