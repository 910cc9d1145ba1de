//! Normalized rescalings `h_k(z) f(λ_k z)` of the counterexample curve.
//!
//! Rungs sit on the cluster sites of `g₂`, which is driven to zero.

use std::f64::consts::LN_2;

use normcurve::generators::paper_counterexample;
use normcurve::rescale::{equicontinuity_probe, normalized_trace, AnnulusGrid, TraceConfig};

fn main() -> normcurve::Result<()> {
    let k = 4;
    let curve = paper_counterexample(k)?;
    let lambdas: Vec<f64> = (1..=k).map(|i| 4f64.powi(i as i32) * LN_2).collect();
    let grid = AnnulusGrid::new(-LN_2, LN_2, 16, 16)?;
    let trace = normalized_trace(&curve, &lambdas, &TraceConfig::new(grid))?;
    let probe = equicontinuity_probe(&curve, &lambdas, &grid, 0.01)?;
    println!("{}", trace.to_json(Some(&probe)));
    Ok(())
}
