//! Floating-point text with 17 significant digits, for JSON and CSV output.
//!
//! Seventeen digits round-trip every finite `f64`, so a dump that is parsed
//! and written again is byte-identical.

use serde::ser::{SerializeSeq, Serializer};
use serde_json::value::RawValue;

/// `x` in scientific notation with 17 significant digits; non-finite values
/// print as `inf`, `-inf` or `nan`.
pub fn fmt(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn raw(x: f64) -> Option<Box<RawValue>> {
    if x.is_finite() {
        Some(RawValue::from_string(fmt(x)).expect("formatted float is valid JSON"))
    } else {
        None
    }
}

/// Serializes an `f64` as a 17-digit JSON number; non-finite values become `null`.
pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    match raw(*x) {
        Some(r) => s.serialize_some(&r),
        None => s.serialize_none(),
    }
}

pub fn serialize_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x.and_then(raw) {
        Some(r) => s.serialize_some(&r),
        None => s.serialize_none(),
    }
}

pub fn serialize_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&raw(*x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt(1.0), "1.0000000000000000e0");
        assert_eq!(fmt(-2.5e-300), "-2.5000000000000000e-300");
        assert_eq!(fmt(f64::INFINITY), "inf");
    }

    proptest! {
        #[test]
        fn text_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let text = fmt(x);
            let back: f64 = text.parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
            let via_json: f64 = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(via_json.to_bits(), x.to_bits());
        }
    }
}
