//! Exact rationals as they appear in input and output files: JSON integers
//! or strings like `"-3/4"`, printed as `N/D`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serializer};
use std::str::FromStr;

pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let r = BigRational::from_str(s).ok()?;
    if r.denom().is_zero() {
        return None;
    }
    Some(r)
}

/// `N/D` with `D > 0`, also for integers.
pub fn format(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shortest form: `N` for integers, `N/D` otherwise.
pub fn format_short(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format(r)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Text(String),
}

impl Raw {
    fn value<E: de::Error>(self) -> Result<BigRational, E> {
        match self {
            Raw::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
            Raw::Text(s) => parse(&s).ok_or_else(|| E::custom(format!("bad rational {s:?}"))),
        }
    }
}

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_short(r))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    Raw::deserialize(d)?.value()
}

/// Serde adapter for `Vec<BigRational>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_short(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(Raw::value)
            .collect()
    }
}

/// Serde adapter for `Option<Vec<BigRational>>`.
pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        Option::<Vec<Raw>>::deserialize(d)?
            .map(|v| v.into_iter().map(Raw::value).collect())
            .transpose()
    }
}
