//! Quadrature circle means of `log|g_j|` against the exact counting functions.

use normcurve::criteria::default_window;
use normcurve::curve::jensen_check;
use normcurve::generators::{random_curve, RandomCurveParams};

fn main() -> normcurve::Result<()> {
    for seed in 0..5 {
        let curve = random_curve(&RandomCurveParams { n: 2, seed, ..Default::default() })?;
        let window = default_window(&curve, 1.0, 1.0);
        let r = jensen_check(&curve, window, 33);
        println!(
            "{}: max error {:.2e} over {} circles ({} skipped near zeros)",
            curve.label(),
            r.max_error,
            r.checked.len(),
            r.skipped.len()
        );
    }
    Ok(())
}
