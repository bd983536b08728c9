//! JSON form `{order: n, terms: [[j, numerator, denominator], …]}`.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings; both forms are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{cyclotomic_poly, CycNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    pub fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(b.to_string()),
        }
    }

    pub fn to_big(&self) -> Result<BigInt> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => BigInt::from_str(s).map_err(|e| Error::Decode(format!("{s}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycNumberJson {
    pub order: u64,
    pub terms: Vec<(u32, IntRepr, IntRepr)>,
}

impl From<&CycNumber> for CycNumberJson {
    fn from(x: &CycNumber) -> Self {
        CycNumberJson {
            order: x.order(),
            terms: x
                .terms()
                .map(|(j, r)| (j, IntRepr::from_big(r.numer()), IntRepr::from_big(r.denom())))
                .collect(),
        }
    }
}

impl TryFrom<CycNumberJson> for CycNumber {
    type Error = Error;

    fn try_from(js: CycNumberJson) -> Result<Self> {
        if js.order == 0 {
            return Err(Error::Decode("order must be positive".into()));
        }
        let phi = cyclotomic_poly(js.order).phi as u32;
        let mut terms = Vec::with_capacity(js.terms.len());
        for (j, n, d) in js.terms {
            if j >= phi {
                return Err(Error::Decode(format!(
                    "exponent {j} exceeds power basis of order {}",
                    js.order
                )));
            }
            let d = d.to_big()?;
            if d.is_zero() {
                return Err(Error::Decode("zero denominator".into()));
            }
            terms.push((j, BigRational::new(n.to_big()?, d)));
        }
        Ok(CycNumber::from_power_basis(js.order, terms))
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumberJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let js = CycNumberJson::deserialize(d)?;
        CycNumber::try_from(js).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let x = CycNumber::root_of_unity(1, 5).scale(&BigRational::new(3.into(), 7.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":5,"terms":[[1,3,7]]}"#);
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn big_coefficients_round_trip() {
        let big = BigInt::from(10).pow(30);
        let x = CycNumber::from_rational(BigRational::new(big, 3.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains("\"1000000000000000000000000000000\""));
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_out_of_basis_exponent() {
        let bad = r#"{"order":5,"terms":[[4,1,1]]}"#;
        assert!(serde_json::from_str::<CycNumber>(bad).is_err());
    }
}
