// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Stable float formatting for CSV and JSON output.

use serde_json::Value;

/// `%.12g`: twelve significant digits, trailing zeros removed, scientific
/// notation outside `1e-5 <= |x| < 1e12`.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds every float in a JSON tree to twelve significant digits.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64 number");
                let rounded: f64 = sig12(x).parse().unwrap_or(x);
                if let Some(num) = serde_json::Number::from_f64(rounded) {
                    *n = num;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(-2.25), "-2.25");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1e-7), "1e-07");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(sig12(0.00012345), "0.00012345");
        assert_eq!(sig12(0.1 + 0.2), "0.3");
        assert_eq!(sig12(f64::NAN), "nan");
    }

    #[test]
    fn rounds_json_floats() {
        let mut v = serde_json::json!({"a": 0.30000000000000004, "b": [1, 2.5]});
        round_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.3,"b":[1,2.5]}"#);
    }
}
