//! Helpers for exact rationals: the `num/den` string form used in all JSON
//! output, and floors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Always `num/den`, even for integers.
pub fn to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn from_int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(x))
}

pub(crate) fn serialize_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn serialize_vec<S: Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(to_string))
}

pub(crate) fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form() {
        let x = BigRational::new(729.into(), 57.into());
        assert_eq!(to_string(&x), "243/19");
        assert_eq!(parse("243/19").unwrap(), x);
        assert_eq!(parse("9").unwrap(), from_int(9));
        assert_eq!(to_string(&from_int(9)), "9/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn floors() {
        assert_eq!(floor(&BigRational::new(729.into(), 57.into())), BigInt::from(12));
        assert_eq!(floor(&BigRational::new((-1).into(), 2.into())), BigInt::from(-1));
        assert_eq!(floor(&from_int(24)), BigInt::from(24));
    }
}
