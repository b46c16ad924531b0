//! Deterministic JSON encoding for reports.
//!
//! Object keys come out sorted (the default `serde_json` map is ordered), and
//! every float is printed with 17 significant digits in exponent form, so
//! identical inputs give byte-identical output. Complex numbers are
//! `[re, im]`; the point at infinity is the string `"infinity"`.

use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{Number, Value};

use crate::curve::Point;

pub const INFINITY: &str = "infinity";

/// A float with 17 significant digits; non-finite values become strings.
pub fn float(v: f64) -> Value {
    if !v.is_finite() {
        return Value::String(format!("{v}"));
    }
    let v = if v == 0.0 { 0.0 } else { v };
    let text = format!("{v:.16e}");
    Value::Number(Number::from_str(&text).expect("formatted float is a valid JSON number"))
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

/// `"infinity"` or `[[x_re, x_im], [y_re, y_im]]`.
pub fn point(p: &Point) -> Value {
    match p.coords() {
        None => Value::String(INFINITY.to_string()),
        Some((x, y)) => Value::Array(vec![complex(x), complex(y)]),
    }
}

pub fn optional_order(order: Option<u32>) -> Value {
    match order {
        Some(n) => Value::from(n),
        None => Value::String("none".to_string()),
    }
}

pub fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}
