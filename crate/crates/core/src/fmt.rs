//! Fixed-precision number formatting shared by the JSON and CSV writers.

/// Significant digits used for every machine-readable float we emit.
pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant decimal digits. Non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    s.parse().unwrap_or(x)
}

/// Plain decimal rendering with [`SIG_DIGITS`] significant digits.
///
/// Infinities render as `inf` / `-inf`, NaN as `nan`.
pub fn decimal(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let r = round_sig(x, SIG_DIGITS);
    if r == 0.0 {
        return "0".to_string();
    }
    let exp = r.abs().log10().floor() as i64;
    let decimals = (SIG_DIGITS as i64 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, r);
    // -0.000 style artifacts cannot occur after rounding, but keep output canonical
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}


/// JSON number that keeps [`SIG_DIGITS`] significant digits and writes
/// non-finite values as the strings `"inf"`, `"-inf"`, `"nan"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JsonNum(pub f64);

impl serde::Serialize for JsonNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_finite() {
            s.serialize_f64(round_sig(x, SIG_DIGITS))
        } else {
            s.serialize_str(&decimal(x))
        }
    }
}
