//! Exact rational helpers shared by every module.
//!
//! Rationals travel through text as `num/den` strings. The parser also
//! accepts a bare integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `+1` for `true`, `-1` for `false`.
pub fn sign(positive: bool) -> Rational {
    if positive {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Canonical `num/den` form; the denominator is always printed.
pub fn to_exact_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short form for tables: integers print without a denominator.
pub fn to_display_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

pub(crate) mod serde_exact {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_exact_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {text:?}")))
    }
}

pub(crate) mod serde_exact_opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&to_exact_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        match text {
            None => Ok(None),
            Some(t) => parse_rational(&t)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_strings_round_trip() {
        for r in [frac(-3, 4), rat(0), rat(7), frac(22, 7)] {
            assert_eq!(parse_rational(&to_exact_string(&r)), Some(r));
        }
        assert_eq!(to_exact_string(&rat(-1)), "-1/1");
        assert_eq!(to_display_string(&frac(6, 4)), "3/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(parse_rational(" 5 "), Some(rat(5)));
    }
}
