//! Verdicts over a seeded batch of random curves.

use normcurve::criteria::{analyze, AnalysisParams};
use normcurve::generators::{random_curve, RandomCurveParams};

fn main() -> normcurve::Result<()> {
    let params = AnalysisParams::default();
    let mut passed = 0;
    for seed in 0..20 {
        let curve = random_curve(&RandomCurveParams { n: 1 + (seed % 2) as usize, seed, ..Default::default() })?;
        let r = analyze(&curve, &params)?;
        passed += usize::from(r.passed());
        println!("{:<16} C(a) = {:>8.4}  C(δ) = {:>8.4}  {:?}", curve.label(), r.c_of_a, r.c_of_delta, r.verdict);
    }
    println!("{passed} of 20 pass");
    Ok(())
}
