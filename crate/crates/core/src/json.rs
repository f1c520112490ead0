//! Canonical JSON encodings.
//!
//! `serde_json::Value` objects keep keys sorted, so rendering a `Value`
//! gives byte-stable output for equal inputs.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::arith::euler_phi;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        if r.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if r.coeffs.len() as u64 != euler_phi(r.conductor) {
            return Err(D::Error::custom(format!(
                "conductor {} needs {} coefficients, got {}",
                r.conductor,
                euler_phi(r.conductor),
                r.coeffs.len()
            )));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CyclotomicNumber::reduce(r.conductor, &coeffs))
    }
}

/// Pretty-printed canonical rendering with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_roundtrip() {
        let x = CyclotomicNumber::one_minus_zeta(5, 2);
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v["conductor"], 5);
        assert_eq!(v["coeffs"][0], "1/1");
        let y: CyclotomicNumber = from_value(v).unwrap();
        assert_eq!(x, y);
        let bad = parse_value(r#"{"conductor": 5, "coeffs": ["1/1"]}"#).unwrap();
        assert!(from_value::<CyclotomicNumber>(bad).is_err());
    }

    #[test]
    fn keys_are_sorted() {
        let v = parse_value(r#"{"b": 1, "a": {"d": 2, "c": 3}}"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"c":3,"d":2},"b":1}"#);
    }
}
