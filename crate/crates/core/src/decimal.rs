//! Serde adapters writing big integers as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Accepts a decimal string or a JSON integer, so hand-written files can use
/// plain numbers while large values round-trip exactly.
#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Text(String),
    Int(i64),
}

impl Repr {
    fn value(self) -> Result<BigInt, String> {
        match self {
            Repr::Text(t) => parse(&t),
            Repr::Int(v) => Ok(BigInt::from(v)),
        }
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    Repr::deserialize(d)?.value().map_err(D::Error::custom)
}

fn parse(text: &str) -> Result<BigInt, String> {
    text.trim().parse().map_err(|_| format!("invalid integer {text:?}"))
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| r.value().map_err(D::Error::custom))
            .collect()
    }
}

/// `BTreeMap<BigInt, u64>` as a JSON object keyed by decimal strings, in
/// numeric key order.
pub mod counts {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BTreeMap<BigInt, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(v.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

/// Decimal strings of a slice, for witnesses and text output.
pub fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
