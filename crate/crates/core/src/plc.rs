//! Exact piecewise-linear convex functions with integer slopes.
//!
//! Every counting function `t ↦ N(e^t, g)` of a function holomorphic in an
//! annulus is of this form: affine between the moduli of consecutive zeros,
//! with the slope jumping by the zero multiplicity at each modulus. The type
//! here stores the knots, the slope on every interval and one anchor value;
//! everything else is derived.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fmt::decimal;

/// Knots closer than this are merged and their jumps added.
pub const KNOT_EPS: f64 = 1e-12;

/// Which one-sided limit to take at a knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// `t ↦ slope·t + intercept` with an integer slope.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFn {
    pub slope: i64,
    pub intercept: f64,
}

impl LinearFn {
    pub fn new(slope: i64, intercept: f64) -> Self {
        LinearFn { slope, intercept }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.slope as f64 * t + self.intercept
    }
}

/// Closed analysis window `[lo, hi]` on the t-axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::invalid(format!(
                "window [{lo}, {hi}] must be finite and nondegenerate"
            )));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Shrinks both ends by `margin`; fails if nothing is left.
    pub fn shrink(&self, margin: f64) -> Result<Self> {
        Window::new(self.lo + margin, self.hi - margin).map_err(|_| {
            Error::invalid(format!(
                "window [{}, {}] has no interior left after trimming {margin} from each end",
                self.lo, self.hi
            ))
        })
    }
}

/// Piecewise-linear convex function of one real variable with integer slopes.
///
/// Invariants: knots strictly increasing and at least [`KNOT_EPS`] apart,
/// `slopes.len() == knots.len() + 1`, slopes strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct PLConvex {
    knots: Vec<f64>,
    slopes: Vec<i64>,
    anchor: (f64, f64),
    // value at each knot, derived from the anchor
    values: Vec<f64>,
}

/// Supremum of a tangent defect together with a maximizing pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DefectWitness {
    pub value: f64,
    /// Base point of the tangent. With `side == Left` this is the left limit `s⁻`.
    pub s: f64,
    pub side: Side,
    pub t: f64,
}

impl PLConvex {
    /// The affine function `slope·t + intercept`.
    pub fn linear(slope: i64, intercept: f64) -> Self {
        PLConvex {
            knots: Vec::new(),
            slopes: vec![slope],
            anchor: (0.0, intercept),
            values: Vec::new(),
        }
    }

    /// Builds a function from its slope at `-∞`, a list of `(knot, jump)`
    /// pairs and one anchor value `(t₀, v₀)`.
    ///
    /// Knots within [`KNOT_EPS`] of each other are merged, zero jumps dropped.
    /// Negative jumps would break convexity and are rejected.
    pub fn from_jumps<I>(left_slope: i64, jumps: I, anchor: (f64, f64)) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, i64)>,
    {
        let (t0, v0) = anchor;
        if !t0.is_finite() || !v0.is_finite() {
            return Err(Error::invalid("anchor must be finite"));
        }
        let mut raw: Vec<(f64, i64)> = jumps.into_iter().collect();
        if let Some(&(t, _)) = raw.iter().find(|(t, _)| !t.is_finite()) {
            return Err(Error::invalid(format!("knot position {t} is not finite")));
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut knots: Vec<f64> = Vec::with_capacity(raw.len());
        let mut jumps: Vec<i64> = Vec::with_capacity(raw.len());
        for (t, j) in raw {
            match knots.last() {
                Some(&last) if t - last <= KNOT_EPS => *jumps.last_mut().unwrap() += j,
                _ => {
                    knots.push(t);
                    jumps.push(j);
                }
            }
        }
        if let Some(i) = jumps.iter().position(|&j| j < 0) {
            return Err(Error::invalid(format!(
                "negative slope jump {} at t = {} breaks convexity",
                jumps[i], knots[i]
            )));
        }

        let mut kept_knots = Vec::with_capacity(knots.len());
        let mut slopes = Vec::with_capacity(knots.len() + 1);
        slopes.push(left_slope);
        let mut current = left_slope;
        for (t, j) in knots.into_iter().zip(jumps) {
            if j == 0 {
                continue;
            }
            current += j;
            kept_knots.push(t);
            slopes.push(current);
        }
        Ok(Self::assemble(kept_knots, slopes, anchor))
    }

    fn assemble(knots: Vec<f64>, slopes: Vec<i64>, anchor: (f64, f64)) -> Self {
        debug_assert_eq!(slopes.len(), knots.len() + 1);
        let (t0, v0) = anchor;
        let mut values = vec![0.0; knots.len()];
        let j = knots.partition_point(|&k| k <= t0);
        // knots to the right of the anchor
        let mut prev_t = t0;
        let mut prev_v = v0;
        for i in j..knots.len() {
            prev_v += slopes[i] as f64 * (knots[i] - prev_t);
            prev_t = knots[i];
            values[i] = prev_v;
        }
        // knots at or to the left of the anchor
        let mut prev_t = t0;
        let mut prev_v = v0;
        for i in (0..j).rev() {
            prev_v -= slopes[i + 1] as f64 * (prev_t - knots[i]);
            prev_t = knots[i];
            values[i] = prev_v;
        }
        PLConvex {
            knots,
            slopes,
            anchor,
            values,
        }
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Slopes on `(-∞, k₀), [k₀, k₁), …, [k_last, ∞)`.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn anchor(&self) -> (f64, f64) {
        self.anchor
    }

    pub fn left_slope(&self) -> i64 {
        self.slopes[0]
    }

    pub fn right_slope(&self) -> i64 {
        *self.slopes.last().unwrap()
    }

    /// `(knot, jump)` pairs; the jump at a knot counts zeros on that circle.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, i64)> + '_ {
        self.knots
            .iter()
            .zip(self.slopes.windows(2))
            .map(|(&t, w)| (t, w[1] - w[0]))
    }

    pub fn is_linear(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t == self.anchor.0 {
            return self.anchor.1;
        }
        if self.knots.is_empty() {
            let (t0, v0) = self.anchor;
            return v0 + self.slopes[0] as f64 * (t - t0);
        }
        let idx = self.knots.partition_point(|&k| k <= t);
        if idx == 0 {
            self.values[0] + self.slopes[0] as f64 * (t - self.knots[0])
        } else {
            self.values[idx - 1] + self.slopes[idx] as f64 * (t - self.knots[idx - 1])
        }
    }

    /// Derivative from the right, the convention for `N'` throughout.
    pub fn right_derivative(&self, t: f64) -> i64 {
        self.derivative(t, Side::Right)
    }

    pub fn derivative(&self, t: f64, side: Side) -> i64 {
        let idx = match side {
            Side::Right => self.knots.partition_point(|&k| k <= t),
            Side::Left => self.knots.partition_point(|&k| k < t),
        };
        self.slopes[idx]
    }

    /// `t ↦ self(t + delta)`.
    pub fn shift(&self, delta: f64) -> Self {
        PLConvex {
            knots: self.knots.iter().map(|k| k - delta).collect(),
            slopes: self.slopes.clone(),
            anchor: (self.anchor.0 - delta, self.anchor.1),
            values: self.values.clone(),
        }
    }

    pub fn subtract_linear(&self, l: LinearFn) -> Self {
        PLConvex {
            knots: self.knots.clone(),
            slopes: self.slopes.iter().map(|s| s - l.slope).collect(),
            anchor: (self.anchor.0, self.anchor.1 - l.eval(self.anchor.0)),
            values: self
                .knots
                .iter()
                .zip(&self.values)
                .map(|(&k, v)| v - l.eval(k))
                .collect(),
        }
    }

    pub fn add_constant(&self, c: f64) -> Self {
        PLConvex {
            knots: self.knots.clone(),
            slopes: self.slopes.clone(),
            anchor: (self.anchor.0, self.anchor.1 + c),
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }

    /// Re-expresses the function with its anchor at `t0`.
    pub fn reanchored(&self, t0: f64) -> Self {
        let mut out = self.clone();
        out.anchor = (t0, self.eval(t0));
        out
    }

    /// Tangent line at `s` using the right derivative.
    pub fn tangent_at(&self, s: f64) -> LinearFn {
        let slope = self.right_derivative(s);
        LinearFn::new(slope, self.eval(s) - slope as f64 * s)
    }

    /// Pointwise maximum of a nonempty family.
    pub fn max_envelope(fs: &[PLConvex]) -> Result<PLConvex> {
        let first = fs
            .first()
            .ok_or_else(|| Error::invalid("max_envelope needs at least one function"))?;
        if fs.len() == 1 {
            return Ok(first.clone());
        }

        let mut events: Vec<f64> = fs.iter().flat_map(|f| f.knots.iter().copied()).collect();
        events.sort_by(f64::total_cmp);
        events.dedup_by(|b, a| *b - *a <= KNOT_EPS);

        // Breakpoints: every input knot plus every pairwise crossing of the
        // affine pieces active on each elementary interval.
        let mut breaks = events.clone();
        let n_int = events.len() + 1;
        let mut lines: Vec<(i64, f64)> = Vec::with_capacity(fs.len());
        for i in 0..n_int {
            let lo = if i == 0 { f64::NEG_INFINITY } else { events[i - 1] };
            let hi = if i == events.len() { f64::INFINITY } else { events[i] };
            let (reference, side) = match (i == 0, events.is_empty()) {
                (_, true) => (0.0, Side::Right),
                (true, false) => (hi, Side::Left),
                (false, false) => (lo, Side::Right),
            };
            lines.clear();
            lines.extend(
                fs.iter()
                    .map(|f| (f.derivative(reference, side), f.eval(reference))),
            );
            for a in 0..lines.len() {
                for b in (a + 1)..lines.len() {
                    let (sa, va) = lines[a];
                    let (sb, vb) = lines[b];
                    if sa == sb {
                        continue;
                    }
                    let x = reference + (vb - va) / (sa - sb) as f64;
                    if x > lo + KNOT_EPS && x < hi - KNOT_EPS {
                        breaks.push(x);
                    }
                }
            }
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|b, a| *b - *a <= KNOT_EPS);

        let active_slope = |t: f64| -> i64 {
            let mut best = f64::NEG_INFINITY;
            let mut slope = 0;
            for f in fs {
                let v = f.eval(t);
                let s = f.right_derivative(t);
                if v > best || (v == best && s > slope) {
                    best = v;
                    slope = s;
                }
            }
            slope
        };

        let mut interval_slopes = Vec::with_capacity(breaks.len() + 1);
        if breaks.is_empty() {
            interval_slopes.push(active_slope(0.0));
        } else {
            interval_slopes.push(active_slope(breaks[0] - 1.0));
            for w in breaks.windows(2) {
                interval_slopes.push(active_slope(0.5 * (w[0] + w[1])));
            }
            interval_slopes.push(active_slope(breaks[breaks.len() - 1] + 1.0));
        }

        let anchor_value = fs
            .iter()
            .map(|f| f.eval(0.0))
            .fold(f64::NEG_INFINITY, f64::max);
        let jumps = breaks
            .iter()
            .zip(interval_slopes.windows(2))
            .map(|(&t, w)| (t, w[1] - w[0]));
        PLConvex::from_jumps(interval_slopes[0], jumps, (0.0, anchor_value))
    }

    /// Candidate tangent base points for defect maximization inside `w`:
    /// window ends and every knot, each with the one-sided slopes that are
    /// reachable from inside the window.
    fn base_candidates(&self, w: Window) -> Vec<(f64, Side)> {
        let mut out = vec![(w.lo, Side::Right), (w.hi, Side::Right), (w.hi, Side::Left)];
        let start = self.knots.partition_point(|&k| k < w.lo);
        for &k in &self.knots[start..] {
            if k > w.hi {
                break;
            }
            if k < w.hi {
                out.push((k, Side::Right));
            }
            if k > w.lo {
                out.push((k, Side::Left));
            }
        }
        out
    }

    /// Exact supremum of `f(t) − f(s) − f'(s)(t − s)` over `s, t ∈ window`
    /// with `|t − s| ≤ a`.
    ///
    /// On each linear piece the defect does not depend on where `s` sits in
    /// the piece, and for fixed `s` it is convex in `t`, so it suffices to
    /// take `s` at piece ends (one-sided) and `t` at the ends of its range.
    pub fn sup_tangent_defect(&self, a: f64, window: Window) -> Result<DefectWitness> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::invalid(format!("a = {a} must be positive and finite")));
        }
        let mut best = DefectWitness {
            value: 0.0,
            s: window.lo,
            side: Side::Right,
            t: window.lo,
        };
        for (s, side) in self.base_candidates(window) {
            let slope = self.derivative(s, side) as f64;
            let fs = self.eval(s);
            for t in [(s - a).max(window.lo), (s + a).min(window.hi)] {
                let value = self.eval(t) - fs - slope * (t - s);
                consider(&mut best, DefectWitness { value, s, side, t });
            }
        }
        Ok(best)
    }

    /// Smallest `C₁` with `f(t) − f(s) − f'(s)(t − s) ≤ C₁ (1 + (t − s)²)` for
    /// all `s, t` in the window, with a maximizing pair.
    pub fn min_quadratic_constant(&self, window: Window) -> DefectWitness {
        let mut best = DefectWitness {
            value: 0.0,
            s: window.lo,
            side: Side::Right,
            t: window.lo,
        };

        // pieces of the function restricted to the window
        let start = self.knots.partition_point(|&k| k <= window.lo);
        let end = self.knots.partition_point(|&k| k < window.hi);
        let mut pieces: Vec<(f64, f64, f64, i64)> = Vec::with_capacity(end - start + 1);
        let mut left = window.lo;
        for i in start..=end {
            let right = if i < end { self.knots[i] } else { window.hi };
            pieces.push((left, right, self.eval(left), self.slopes[i]));
            left = right;
        }

        for (s, side) in self.base_candidates(window) {
            let slope = self.derivative(s, side);
            let fs = self.eval(s);
            for &(p, q, fp, piece_slope) in &pieces {
                if piece_slope == slope {
                    continue; // defect vanishes on this piece
                }
                let alpha = fp + piece_slope as f64 * (s - p) - fs;
                let beta = (piece_slope - slope) as f64;
                let (u_lo, u_hi) = (p - s, q - s);
                let mut try_u = |u: f64| {
                    if u >= u_lo && u <= u_hi {
                        let value = (alpha + beta * u) / (1.0 + u * u);
                        consider(&mut best, DefectWitness { value, s, side, t: s + u });
                    }
                };
                try_u(u_lo);
                try_u(u_hi);
                let disc = (alpha * alpha + beta * beta).sqrt();
                try_u((-alpha + disc) / beta);
                try_u((-alpha - disc) / beta);
            }
        }
        best
    }

    /// CSV with header `t,value,right_slope`, one row per knot inside the
    /// window plus both window ends.
    pub fn to_csv(&self, window: Window) -> String {
        let mut ts = vec![window.lo];
        ts.extend(
            self.knots
                .iter()
                .copied()
                .filter(|&k| k > window.lo && k < window.hi),
        );
        ts.push(window.hi);
        let mut out = String::from("t,value,right_slope\n");
        for t in ts {
            let _ = writeln!(
                out,
                "{},{},{}",
                decimal(t),
                decimal(self.eval(t)),
                self.right_derivative(t)
            );
        }
        out
    }
}

/// Keeps the larger value; near-ties go to the smaller `t`, then smaller `s`.
fn consider(best: &mut DefectWitness, cand: DefectWitness) {
    if !cand.value.is_finite() {
        return;
    }
    let tol = 1e-12 * best.value.abs().max(1.0);
    if cand.value > best.value + tol {
        *best = cand;
    } else if cand.value >= best.value - tol && (cand.t, cand.s) < (best.t, best.s) {
        *best = DefectWitness {
            value: best.value.max(cand.value),
            ..cand
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(knot: f64) -> PLConvex {
        PLConvex::from_jumps(0, [(knot, 1)], (knot, 0.0)).unwrap()
    }

    fn abs_t() -> PLConvex {
        PLConvex::from_jumps(-1, [(0.0, 2)], (0.0, 0.0)).unwrap()
    }

    fn window(lo: f64, hi: f64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(PLConvex::linear(1, 0.0).eval(3.0), 3.0);
        let f = ramp(2f64.ln());
        assert!((f.eval(4f64.ln()) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(f.eval(0.0), 0.0);
    }

    #[test]
    fn right_derivative_examples() {
        let f = ramp(0.0);
        assert_eq!(f.right_derivative(0.0), 1);
        assert_eq!(f.derivative(0.0, Side::Left), 0);
        assert_eq!(f.right_derivative(-1.0), 0);
        assert_eq!(ramp(2f64.ln()).right_derivative(1.0), 1);
    }

    #[test]
    fn envelope_examples() {
        let e = PLConvex::max_envelope(&[PLConvex::linear(0, 0.0), PLConvex::linear(1, 0.0)])
            .unwrap();
        assert_eq!(e.knots(), &[0.0]);
        assert_eq!(e.slopes(), &[0, 1]);

        let e = PLConvex::max_envelope(&[PLConvex::linear(1, 0.0), PLConvex::linear(-1, 0.0)])
            .unwrap();
        assert_eq!(e, abs_t());

        // max(0,t) against 1 + max(0,-t): the second dominates on t < 1, so the
        // envelope has its own knot at 0 and one crossing at t = 1
        let left = PLConvex::from_jumps(-1, [(0.0, 1)], (0.0, 1.0)).unwrap();
        let parts = [ramp(0.0), left];
        let e = PLConvex::max_envelope(&parts).unwrap();
        assert_eq!(e.knots(), &[0.0, 1.0]);
        assert_eq!(e.slopes(), &[-1, 0, 1]);
        assert_eq!(e.eval(0.0), 1.0);
        for i in 0..=4000 {
            let t = -4.0 + 0.002 * i as f64;
            let oracle = parts.iter().map(|f| f.eval(t)).fold(f64::MIN, f64::max);
            assert!((e.eval(t) - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn envelope_rejects_empty() {
        assert!(PLConvex::max_envelope(&[]).is_err());
    }

    #[test]
    fn shift_and_subtract() {
        let f = ramp(0.0);
        let g = f.shift(5.0);
        assert_eq!(g.knots(), &[-5.0]);
        assert_eq!(g.eval(-3.0), 2.0);
        assert_eq!(f.shift(0.0), f);

        let z = PLConvex::linear(1, 0.0).subtract_linear(LinearFn::new(1, 0.0));
        assert_eq!(z.slopes(), &[0]);
        assert_eq!(z.eval(17.0), 0.0);

        let h = f.subtract_linear(LinearFn::new(0, 3.0));
        assert_eq!(h.eval(5.0), 2.0);
        assert_eq!(h.eval(-5.0), -3.0);
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(abs_t().tangent_at(0.0), LinearFn::new(1, 0.0));
        assert_eq!(ramp(2f64.ln()).tangent_at(0.0), LinearFn::new(0, 0.0));
    }

    #[test]
    fn from_jumps_merges_and_canonicalizes() {
        let f = PLConvex::from_jumps(0, [(1.0, 1), (1.0 + 1e-13, 2), (3.0, 0)], (0.0, 0.0))
            .unwrap();
        assert_eq!(f.knots(), &[1.0]);
        assert_eq!(f.slopes(), &[0, 3]);
        assert!(PLConvex::from_jumps(0, [(1.0, -1)], (0.0, 0.0)).is_err());
    }

    #[test]
    fn defect_linear_is_zero() {
        let f = PLConvex::linear(3, -1.0);
        let d = f.sup_tangent_defect(2.0, window(-5.0, 5.0)).unwrap();
        assert_eq!(d.value, 0.0);
        assert_eq!(f.min_quadratic_constant(window(-5.0, 5.0)).value, 0.0);
    }

    #[test]
    fn defect_ramp_uses_left_limit() {
        let d = ramp(0.0).sup_tangent_defect(2.0, window(-5.0, 5.0)).unwrap();
        assert!((d.value - 2.0).abs() < 1e-15);
        // (0⁻, 2) and (0, −2) both attain 2; ties go to the smaller t
        assert_eq!((d.s, d.side, d.t), (0.0, Side::Right, -2.0));
        let w = ramp(0.0).sup_tangent_defect(2.0, window(-1.0, 5.0)).unwrap();
        assert!((w.value - 2.0).abs() < 1e-15);
        assert_eq!((w.s, w.side, w.t), (0.0, Side::Left, 2.0));
    }

    #[test]
    fn defect_rejects_nonpositive_a() {
        assert!(ramp(0.0).sup_tangent_defect(0.0, window(-1.0, 1.0)).is_err());
        assert!(ramp(0.0).sup_tangent_defect(-1.0, window(-1.0, 1.0)).is_err());
    }

    #[test]
    fn csv_rows() {
        let csv = ramp(0.0).to_csv(window(-1.0, 2.0));
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "t,value,right_slope");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "0,0,1");
    }
}
