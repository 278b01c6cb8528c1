//! Exact rational scalars.
//!
//! Everything downstream computes over `Q = Ratio<BigInt>`; there is no
//! floating point anywhere in the crate. Rationals serialize as `"p/q"`
//! (or `"p"` when the denominator is one) in all JSON I/O.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

pub type Q = BigRational;

/// Integer as a rational.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `p/q` as a rational; panics on `q == 0`.
pub fn q(p: i64, den: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(den))
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

/// Renders `p/q`, omitting the denominator when it is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Q::from_integer)
            .map_err(|e| format!("bad rational '{s}': {e}")),
        Some((p, den)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator '{p}': {e}"))?;
            let den =
                BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator '{den}': {e}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(Q::new(p, den))
        }
    }
}

/// Serde adapter: rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map(QStr).map_err(de::Error::custom)
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(xs: &[Q]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::lcm(l, x.denom().abs());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_strings() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let v = parse_q(s).unwrap();
            assert_eq!(format_q(&v), s);
        }
        assert_eq!(parse_q("4/8").unwrap(), q(1, 2));
        assert_eq!(format_q(&q(-4, -8)), "1/2");
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn denominators_stay_positive() {
        let v = q(3, -4);
        assert!(v.denom() > &BigInt::from(0));
        assert_eq!(format_q(&v), "-3/4");
    }
}
