//! Serde adapters for arbitrary-precision integers.
//!
//! JSON numbers are not reliable past 2^53, so big integers travel as
//! decimal strings.

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serializer};
use std::collections::BTreeMap;

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let text = String::deserialize(d)?;
    text.parse::<BigInt>()
        .map_err(|e| de::Error::custom(format!("invalid integer literal {text:?}: {e}")))
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        match text {
            None => Ok(None),
            Some(t) => t
                .parse::<BigInt>()
                .map(Some)
                .map_err(|e| de::Error::custom(format!("invalid integer literal {t:?}: {e}"))),
        }
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let as_strings: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        serde::Serialize::serialize(&as_strings, s)
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let as_strings: Vec<String> = Vec::deserialize(d)?;
        as_strings
            .into_iter()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|e| de::Error::custom(format!("invalid integer literal {t:?}: {e}")))
            })
            .collect()
    }
}

pub mod map {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &BTreeMap<usize, BigInt>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let as_strings: BTreeMap<usize, String> =
            x.iter().map(|(k, v)| (*k, v.to_string())).collect();
        serde::Serialize::serialize(&as_strings, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<usize, BigInt>, D::Error> {
        let as_strings: BTreeMap<usize, String> = BTreeMap::deserialize(d)?;
        as_strings
            .into_iter()
            .map(|(k, t)| {
                t.parse::<BigInt>()
                    .map(|v| (k, v))
                    .map_err(|e| de::Error::custom(format!("invalid integer literal {t:?}: {e}")))
            })
            .collect()
    }
}
