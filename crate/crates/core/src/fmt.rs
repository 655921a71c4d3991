//! Number formatting for every emitted report.
//!
//! All floating point values leave the crate with 17 significant digits in
//! scientific notation (`1.3533528323661270e-1`), which round-trips any
//! `f64` exactly and keeps CSV/JSON output byte-stable across platforms.
//! Non-finite values are written as `inf`, `-inf` or `nan` (quoted in JSON).

use serde::Serializer;
use serde_json::value::RawValue;

/// Formats `v` with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{:.16e}", v)
    }
}

/// JSON rendering of `v`: a bare number when finite, a string otherwise.
pub fn json_number(v: f64) -> String {
    if v.is_finite() {
        sig17(v)
    } else {
        format!("\"{}\"", sig17(v))
    }
}

/// `serialize_with` helper for `f64` fields. Only meaningful with `serde_json`.
pub fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(json_number(*v)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

/// `serialize_with` helper for optional `f64` fields (`None` becomes `null`).
pub fn ser_opt_f64<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

/// `serialize_with` helper for `(f64, f64, f64)` points.
pub fn ser_point3<S: Serializer>(v: &[f64; 3], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for x in v {
        let raw = RawValue::from_string(json_number(*x)).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}
