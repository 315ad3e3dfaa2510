//! JSON helpers: big integers are written as plain JSON numbers.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::IntPoly;

fn to_number(n: &BigInt) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("integer literal is a JSON number")
}

fn from_number<E: serde::de::Error>(n: &serde_json::Number) -> Result<BigInt, E> {
    n.to_string()
        .parse()
        .map_err(|_| E::custom(format!("{n} is not an integer")))
}

/// `serde(with = ...)` adapter for [`IntPoly`] as a list of JSON integers.
pub mod int_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
        p.coeffs()
            .iter()
            .map(to_number)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs: Result<Vec<BigInt>, D::Error> = nums.iter().map(from_number).collect();
        Ok(IntPoly::new(coeffs?))
    }
}

/// Adapter for `Vec<BigInt>`.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        nums.iter().map(from_number).collect()
    }
}
