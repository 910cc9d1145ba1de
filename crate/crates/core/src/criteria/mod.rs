//! The two normality conditions, evaluated on the envelope
//! `N(t, F) = max_j N(t, g_j)`.
//!
//! * Tangent-defect bound: `N(t,F) − N(s,F) − N'(s,F)(t − s) ≤ C(a)` for
//!   `|t − s| ≤ a`, and its quadratic form with constant `C₁`.
//! * Cluster condition: whenever the coordinates in `I` all have zeros in a
//!   δ-disc centred at `w`, `N(|w|,F) ≤ max_{j∉I} N(|w|,g_j) + C(δ)`.
//!
//! On finite data the "for some constant" clauses become reported constants;
//! the pass/fail verdict is a threshold policy on top of them.

mod clusters;
mod ostrowski;

use serde::Serialize;

use crate::curve::Curve;
use crate::error::Result;
use crate::fmt::JsonNum;
use crate::plc::{DefectWitness, PLConvex, Window};

pub use self::clusters::{cluster_regions, disc_intersection_t_extent, ClusterRegion, DISC_TOL};
pub use self::ostrowski::{ostrowski_check, ring_bound, OstrowskiReport, RING_TOL};

/// Default analysis window: the zero range padded by `a + pad` on both sides.
pub fn default_window(curve: &Curve, a: f64, pad: f64) -> Window {
    let margin = a + pad;
    let (lo, hi) = curve.zero_t_range().unwrap_or((0.0, 0.0));
    Window {
        lo: lo - margin,
        hi: hi + margin,
    }
}

/// Warning text when zeros fall outside the analysis window.
pub fn truncation_warning(curve: &Curve, window: Window) -> Option<String> {
    let (lo, hi) = curve.zero_t_range()?;
    (lo < window.lo || hi > window.hi).then(|| {
        format!(
            "zeros span t in [{lo}, {hi}] but the window is [{}, {}]; constants near the window edge are truncation artifacts",
            window.lo, window.hi
        )
    })
}

/// `sup N(t,F) − N(s,F) − N'(s,F)(t − s)` over `|t − s| ≤ a`.
///
/// With `interior_only`, both `s` and `t` are kept at least `a` away from the
/// window ends.
pub fn second_condition(
    curve: &Curve,
    a: f64,
    window: Window,
    interior_only: bool,
) -> Result<DefectWitness> {
    let w = if interior_only { window.shrink(a)? } else { window };
    curve.envelope().sup_tangent_defect(a, w)
}

/// Smallest `C₁` in `N(t,F) − N(s,F) − N'(s,F)(t − s) ≤ C₁ (1 + (t − s)²)`.
pub fn quadratic_condition(curve: &Curve, window: Window) -> DefectWitness {
    curve.envelope().min_quadratic_constant(window)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThirdWitness {
    pub t: f64,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThirdCondition {
    /// `C(δ)`; `+∞` when some disc holds zeros of every coordinate.
    pub value: f64,
    pub witness: Option<ThirdWitness>,
}

/// `C(δ) = sup [N(t,F) − max_{j∉I} N(t,g_j)]` over all cluster regions
/// `(I, t-intervals)` intersected with the window.
///
/// An empty complement has maximum `−∞`, so a region with `I` = all
/// coordinates makes the constant infinite.
pub fn third_condition(curve: &Curve, delta: f64, window: Window) -> Result<ThirdCondition> {
    let regions = cluster_regions(curve, delta)?;
    let counting = curve.counting_functions();
    let envelope = PLConvex::max_envelope(&counting)?;
    let n = counting.len();

    // (gap, t, subset) at every candidate point
    let mut cands: Vec<(f64, f64, &[usize])> = Vec::new();
    for region in &regions {
        let complement: Vec<usize> = (0..n).filter(|j| !region.subset.contains(j)).collect();
        for &(a, b) in &region.t_intervals {
            let (lo, hi) = (a.max(window.lo), b.min(window.hi));
            if lo > hi {
                continue;
            }
            if complement.is_empty() {
                cands.push((f64::INFINITY, lo, &region.subset));
                continue;
            }
            let gap = |t: f64| {
                envelope.eval(t)
                    - complement
                        .iter()
                        .map(|&j| counting[j].eval(t))
                        .fold(f64::NEG_INFINITY, f64::max)
            };
            let mut ts = vec![lo, hi];
            for f in std::iter::once(&envelope).chain(complement.iter().map(|&j| &counting[j])) {
                let k = f.knots();
                let start = k.partition_point(|&x| x <= lo);
                ts.extend(k[start..].iter().take_while(|&&x| x < hi));
            }
            cands.extend(ts.into_iter().map(|t| (gap(t), t, region.subset.as_slice())));
        }
    }

    let value = cands.iter().map(|c| c.0).fold(0.0, f64::max);
    let tol = if value.is_finite() { 1e-12 * value.abs().max(1.0) } else { 0.0 };
    let witness = cands
        .iter()
        .filter(|c| c.0 >= value - tol || c.0 == value)
        .min_by(|x, y| x.1.total_cmp(&y.1).then_with(|| x.2.cmp(y.2)))
        .map(|c| ThirdWitness {
            t: c.1,
            subset: c.2.to_vec(),
        });
    Ok(ThirdCondition { value, witness })
}

/// Analysis settings. Thresholds are policy: the default accepts any finite constants.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisParams {
    pub a: f64,
    pub delta: f64,
    /// `None` picks [`default_window`] with one unit of padding.
    pub window: Option<Window>,
    pub interior_only: bool,
    pub threshold_a: f64,
    pub threshold_delta: f64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            a: 1.0,
            delta: 0.3,
            window: None,
            interior_only: true,
            threshold_a: f64::INFINITY,
            threshold_delta: f64::INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriteriaReport {
    pub a: f64,
    pub c_of_a: f64,
    pub witness_second: DefectWitness,
    pub c1: f64,
    pub witness_quadratic: DefectWitness,
    pub delta: f64,
    pub c_of_delta: f64,
    pub witness_third: Option<ThirdWitness>,
    pub ostrowski: Option<OstrowskiReport>,
    pub verdict: Verdict,
    pub window: Window,
    pub warnings: Vec<String>,
}

pub fn analyze(curve: &Curve, params: &AnalysisParams) -> Result<CriteriaReport> {
    let window = match params.window {
        Some(w) => Window::new(w.lo, w.hi)?,
        None => default_window(curve, params.a, 1.0),
    };
    let second = second_condition(curve, params.a, window, params.interior_only)?;
    let quadratic = quadratic_condition(curve, window);
    let third = third_condition(curve, params.delta, window)?;
    let ostrowski = if curve.dimension() == 1 {
        Some(ostrowski_check(curve, window)?)
    } else {
        None
    };
    let pass = second.value <= params.threshold_a
        && third.value.is_finite()
        && third.value <= params.threshold_delta;
    Ok(CriteriaReport {
        a: params.a,
        c_of_a: second.value,
        witness_second: second,
        c1: quadratic.value,
        witness_quadratic: quadratic,
        delta: params.delta,
        c_of_delta: third.value,
        witness_third: third.witness,
        ostrowski,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        window,
        warnings: truncation_warning(curve, window).into_iter().collect(),
    })
}

#[derive(Serialize)]
struct SecondJson {
    s: JsonNum,
    t: JsonNum,
}

#[derive(Serialize)]
struct ThirdJson<'a> {
    t: JsonNum,
    #[serde(rename = "I")]
    subset: &'a [usize],
}

#[derive(Serialize)]
struct ReportJson<'a> {
    #[serde(rename = "C_of_a")]
    c_of_a: JsonNum,
    a: JsonNum,
    #[serde(rename = "C1")]
    c1: JsonNum,
    #[serde(rename = "C_of_delta")]
    c_of_delta: JsonNum,
    delta: JsonNum,
    witness_second: SecondJson,
    witness_third: Option<ThirdJson<'a>>,
    ostrowski: Option<ostrowski::OstrowskiJson>,
    verdict: Verdict,
    window: [JsonNum; 2],
}

impl CriteriaReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The report as JSON with a fixed key order and 12 significant digits.
    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            c_of_a: JsonNum(self.c_of_a),
            a: JsonNum(self.a),
            c1: JsonNum(self.c1),
            c_of_delta: JsonNum(self.c_of_delta),
            delta: JsonNum(self.delta),
            witness_second: SecondJson {
                s: JsonNum(self.witness_second.s),
                t: JsonNum(self.witness_second.t),
            },
            witness_third: self.witness_third.as_ref().map(|w| ThirdJson {
                t: JsonNum(w.t),
                subset: &w.subset,
            }),
            ostrowski: self.ostrowski.as_ref().map(Into::into),
            verdict: self.verdict,
            window: [JsonNum(self.window.lo), JsonNum(self.window.hi)],
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}
