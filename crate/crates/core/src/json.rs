//! Serde adapters. Big integers are always written as decimal strings and
//! rationals as `{"num": "...", "den": "..."}`, so nothing exceeds the range
//! of a JSON number.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(x: &Rational) -> Self {
        RationalRepr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl TryFrom<RationalRepr> for Rational {
    type Error = String;

    fn try_from(r: RationalRepr) -> Result<Self, String> {
        let num: Int = r.num.parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: Int = r.den.parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den == Int::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(num, den))
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr::from(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        Rational::try_from(repr).map_err(serde::de::Error::custom)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(RationalRepr::from).serialize(s)
    }
}

pub mod rational_map {
    use std::collections::BTreeMap;

    use super::*;

    pub fn serialize<K: Serialize + Ord, S: Serializer>(
        m: &BTreeMap<K, Rational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&K, RationalRepr> = m.iter().map(|(k, v)| (k, v.into())).collect();
        out.serialize(s)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<RationalRepr> = xs.iter().map(RationalRepr::from).collect();
        out.serialize(s)
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
