//! Exact rational values.
//!
//! Every function value, gain, bound and ratio is a `BigRational`. On disk
//! they are strings: `"p/q"` in lowest terms, or `"p"` when the denominator
//! is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Value = BigRational;

pub fn int(v: i64) -> Value {
    Value::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Value {
    Value::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Value {
    Value::zero()
}

pub fn one() -> Value {
    Value::one()
}

pub fn parse(s: &str) -> Result<Value> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Value::new(num, den))
}

pub fn format(v: &Value) -> String {
    v.to_string()
}

/// Parses a rational that must be strictly positive.
pub fn parse_positive(s: &str) -> Result<Value> {
    let v = parse(s)?;
    if !v.is_positive() {
        return Err(Error::InvalidParameter(format!("{s} must be positive")));
    }
    Ok(v)
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Value, exp: usize) -> Value {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Lossy conversion for human-facing summaries only.
pub fn approx_f64(v: &Value) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// `serde(with = ...)` adapter storing a [`Value`] as a rational string.
pub mod as_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Value, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).map_err(de::Error::custom)
    }
}

/// Same as [`as_string`] for optional values.
pub mod opt_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Value>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&format(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Value>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| parse(&r).map_err(de::Error::custom)).transpose()
    }
}
