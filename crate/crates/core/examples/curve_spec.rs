//! Loading a curve-spec document and evaluating the curve in P^n.

use normcurve::curve::fs_distance;
use normcurve::{Curve, LogPoint};

const SPEC: &str = r#"{"label": "two zeros", "coordinates": [
    {"logA": 0.0, "m": 1, "zeros": [{"t": 0.5, "theta": 1.0}]},
    {"logA": -0.5, "m": 2, "zeros": [{"t": -1.0, "theta": 0.0, "mult": 2}]}
]}"#;

fn main() -> normcurve::Result<()> {
    let loaded = Curve::from_json(SPEC)?;
    println!("exponents shifted down by {}", loaded.m_shift);
    let curve = loaded.curve;
    let p = curve.evaluate(LogPoint::new(0.0, 0.0))?;
    let q = curve.evaluate(LogPoint::new(0.01, 0.0))?;
    println!("f(1) = {:?}", p.coords());
    println!("FS distance to f(e^0.01) = {:.6}", fs_distance(&p, &q));
    println!("{}", curve.to_json());
    Ok(())
}
