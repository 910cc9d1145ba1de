//! The curve specification file.
//!
//! ```json
//! {"label": "geometric", "coordinates": [
//!   {"logA": 0.0, "argA": 0.0, "m": 0, "zeros": [{"t": 0.0, "theta": 0.0, "mult": 1}]},
//!   {"logA": 0.0, "m": 0, "zeros": []}
//! ]}
//! ```
//!
//! `argA` defaults to 0 and `mult` to 1. Exponents may be given unnormalized;
//! the loader subtracts the smallest one and reports the shift.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CanonicalCoordinate, Curve, Zero};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroSpec {
    pub t: f64,
    pub theta: f64,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateSpec {
    #[serde(rename = "logA")]
    pub log_a: f64,
    #[serde(rename = "argA", default)]
    pub arg_a: f64,
    pub m: i64,
    #[serde(default)]
    pub zeros: Vec<ZeroSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub label: String,
    pub coordinates: Vec<CoordinateSpec>,
}

/// A validated curve plus the amount subtracted from every `m_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedCurve {
    pub curve: Curve,
    pub m_shift: i64,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve spec serializes")
    }

    pub fn into_curve(self) -> Result<LoadedCurve> {
        let shift = self.coordinates.iter().map(|c| c.m).min().unwrap_or(0);
        let mut coords = Vec::with_capacity(self.coordinates.len());
        for (j, c) in self.coordinates.into_iter().enumerate() {
            let m = u32::try_from(c.m - shift)
                .map_err(|_| Error::invalid(format!("coordinate {j}: exponent out of range")))?;
            let zeros = c
                .zeros
                .into_iter()
                .map(|z| Zero::new(z.t, z.theta, z.mult))
                .collect();
            coords.push(CanonicalCoordinate::new(c.log_a, c.arg_a, m, zeros)?);
        }
        Ok(LoadedCurve {
            curve: Curve::new(self.label, coords)?,
            m_shift: shift,
        })
    }
}

impl From<&Curve> for CurveSpec {
    fn from(curve: &Curve) -> Self {
        CurveSpec {
            label: curve.label().to_string(),
            coordinates: curve
                .coordinates()
                .iter()
                .map(|c| CoordinateSpec {
                    log_a: c.log_a(),
                    arg_a: c.arg_a(),
                    m: c.m() as i64,
                    zeros: c
                        .zeros()
                        .iter()
                        .map(|z| ZeroSpec {
                            t: z.point.t,
                            theta: z.point.theta,
                            mult: z.multiplicity,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl Curve {
    pub fn from_json(text: &str) -> Result<LoadedCurve> {
        CurveSpec::from_json(text)?.into_curve()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<LoadedCurve> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Curve::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        CurveSpec::from(self).to_json()
    }
}
