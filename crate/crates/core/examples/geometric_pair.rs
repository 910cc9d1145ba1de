//! Both criteria and Ostrowski's conditions on `(∏(1 − 2^{−k}z), ∏(1 + 2^{−k}z))`.
//!
//! cargo run --example geometric_pair -- [K]

use std::f64::consts::PI;

use normcurve::criteria::{analyze, ostrowski_check, AnalysisParams};
use normcurve::generators::geometric_pair;

fn main() -> normcurve::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let curve = geometric_pair(k, 2.0, 0.0, PI)?;
    let report = analyze(&curve, &AnalysisParams::default())?;
    println!("{}", curve.label());
    println!("  C(a = {}) = {:.6}   witness s = {:.4}, t = {:.4}", report.a, report.c_of_a, report.witness_second.s, report.witness_second.t);
    println!("  C1        = {:.6}", report.c1);
    println!("  C(δ = {}) = {}", report.delta, report.c_of_delta);
    let o = ostrowski_check(&curve, report.window)?;
    println!("  Ostrowski a) {}  b) {}  c) {:.6}  d) {}", o.a_bound, o.b_bound, o.c_min_dist, o.d_constant);
    println!("  verdict: {:?}", report.verdict);
    Ok(())
}
