use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::algebra::Scalar;
use crate::arrangement::{CharPoly, Flat};
use crate::matroid::Circuit;

pub const SCHEMA_VERSION: u32 = 1;

pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| json!(s.to_string())).collect())
}

pub fn poly(p: &CharPoly) -> Value {
    json!({
        "degree": p.degree(),
        "coeffs": p.descending().iter().map(int).collect::<Vec<_>>(),
        "alt": p.alt_coeffs().iter().map(int).collect::<Vec<_>>(),
        "pretty": p.to_string(),
    })
}

pub fn circuit(c: &Circuit) -> Value {
    json!(c.indices().iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn flat(x: &Flat) -> Value {
    json!({
        "dim": x.dim(),
        "equations": x.system().rows().map(scalars).collect::<Vec<_>>(),
    })
}

/// `(1, 1, -1)`
pub fn tuple(v: &[Scalar]) -> String {
    format!("({})", v.iter().join(", "))
}

pub fn ints_tuple(v: &[BigInt]) -> String {
    format!("({})", v.iter().join(", "))
}

/// `{1,2,3}` with 1-based indices.
pub fn index_set(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|i| i + 1).join(","))
}

/// Human-readable equations of a flat, e.g. `y1 + y2 - y3 = 0`.
pub fn equations(x: &Flat, var: &str) -> String {
    if x.is_full() {
        return "whole space".into();
    }
    let d = x.ambient_dim();
    x.system()
        .rows()
        .map(|row| {
            let lhs = (0..d)
                .filter(|&j| !row[j].is_zero())
                .enumerate()
                .map(|(k, j)| {
                    let s = row[j].to_string();
                    let (neg, mag) = match s.strip_prefix('-') {
                        Some(m) => (true, m.to_string()),
                        None => (false, s),
                    };
                    let coef = if mag == "1" { String::new() } else { mag };
                    let sign = match (k, neg) {
                        (0, false) => "",
                        (0, true) => "-",
                        (_, false) => " + ",
                        (_, true) => " - ",
                    };
                    format!("{sign}{coef}{var}{}", j + 1)
                })
                .collect::<String>();
            format!("{lhs} = {}", row[d])
        })
        .join(", ")
}
