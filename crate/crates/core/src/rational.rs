//! Exact rational helpers and the canonical string form used on the wire.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parses either a rational `"p/q"` or a finite decimal like `"0.05"` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.contains('/') || !t.contains(['.', 'e', 'E']) {
        return parse_rational(t);
    }
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Rational::new(
        digits.parse::<BigInt>().map_err(|_| bad())?,
        BigInt::from(10).pow(frac_part.len() as u32),
    );
    let ten = int(10);
    if exp >= 0 {
        value *= num_traits::pow(ten, exp as usize);
    } else {
        value /= num_traits::pow(ten, (-exp) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Canonical wire form: `"p"` for integers, `"p/q"` otherwise, lowest terms, `q > 0`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn to_decimal(q: &Rational) -> String {
    format!("{:.6}", to_f64(q))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn pow_int(base: u64, exp: u32) -> Rational {
    Rational::from_integer(BigInt::from(base).pow(exp))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub mod serde_str {
    //! `#[serde(with = ...)]` adapter storing a rational as its canonical string.
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(de::Error::custom)
    }

    /// Rationals are accepted as strings or as JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Str(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> crate::Result<Rational> {
            match self {
                RationalRepr::Str(s) => parse_rational(&s),
                RationalRepr::Int(n) => Ok(super::int(n)),
            }
        }
    }
}
