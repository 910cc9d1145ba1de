//! Counting functions and their envelope as knot tables.

use normcurve::criteria::default_window;
use normcurve::generators::{random_curve, RandomCurveParams};

fn main() -> normcurve::Result<()> {
    let curve = random_curve(&RandomCurveParams { n: 2, seed: 4, ..Default::default() })?;
    let window = default_window(&curve, 1.0, 1.0);
    for (j, n) in curve.counting_functions().iter().enumerate() {
        println!("# N(t, g_{j})\n{}", n.to_csv(window));
    }
    println!("# envelope\n{}", curve.envelope().to_csv(window));
    Ok(())
}
