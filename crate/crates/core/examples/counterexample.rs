//! A normal curve in P² whose third coordinate breaks Ostrowski's ring bound.
//!
//! The criteria constants settle as the truncation depth grows while the ring
//! count of `g₂` keeps climbing.

use normcurve::criteria::{analyze, ring_bound, AnalysisParams};
use normcurve::generators::paper_counterexample;

fn main() -> normcurve::Result<()> {
    let params = AnalysisParams::default();
    println!("{:>2} {:>10} {:>10} {:>6}", "K", "C(a=1)", "C(δ=0.3)", "ring");
    for k in 2..=6 {
        let curve = paper_counterexample(k)?;
        let r = analyze(&curve, &params)?;
        let ring = ring_bound(&curve.coordinates()[2], r.window);
        println!("{k:>2} {:>10.6} {:>10.6} {ring:>6}", r.c_of_a, r.c_of_delta);
    }
    Ok(())
}
