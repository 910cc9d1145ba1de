//! Zeros of two coordinates that approach each other: the cluster constant is
//! infinite and the rescaled family loses equicontinuity.

use normcurve::criteria::{analyze, AnalysisParams};
use normcurve::generators::{colliding_pair, GapSchedule, COLLISION_SPACING};
use normcurve::rescale::{equicontinuity_probe, ladder, AnnulusGrid};

fn main() -> normcurve::Result<()> {
    let curve = colliding_pair(20, GapSchedule::Harmonic { scale: 1.0 }, COLLISION_SPACING)?;
    let params = AnalysisParams { delta: 0.5, ..Default::default() };
    let r = analyze(&curve, &params)?;
    println!("C(δ = 0.5) = {}  verdict {:?}", r.c_of_delta, r.verdict);
    if let Some(w) = &r.witness_third {
        println!("cluster at t = {:.4} over coordinates {:?}", w.t, w.subset);
    }

    // one rung per collision site
    let grid = AnnulusGrid::new(-0.5, 0.5, 11, 16)?;
    let probe = equicontinuity_probe(&curve, &ladder(4.0, 4.0, 20), &grid, 0.01)?;
    for (i, l) in probe.per_lambda.iter().enumerate() {
        println!("log λ = {:>4}  L = {l:.3}", 4 * (i + 1));
    }
    Ok(())
}
