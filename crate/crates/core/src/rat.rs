//! Exact rational scalars.
//!
//! Every quantity in this crate is carried as a `BigRational` so that
//! order comparisons (prefix sums, hull membership, mean comparisons)
//! are never blurred by rounding. The textual form is `"p/q"`, or just
//! `"p"` when the denominator is one; that is also the JSON encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Largest absolute integer exponent accepted by [`pow_rat`].
pub const MAX_EXPONENT: i64 = 1_000_000;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on a zero denominator; intended for
/// literals in tests and examples.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let denom: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical text form: `p/q` reduced, or `p` when integral.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact integer power. Negative exponents invert; the base must then be
/// nonzero.
pub fn pow_rat(base: &Rat, exp: i64) -> Result<Rat> {
    if exp == 0 {
        return Ok(Rat::one());
    }
    if exp.abs() > MAX_EXPONENT {
        return Err(Error::ExponentOutOfRange);
    }
    if exp < 0 && base.is_zero() {
        return Err(Error::InvalidInput(
            "zero base with negative exponent".into(),
        ));
    }
    Ok(base.pow(exp as i32))
}

/// Integer value of a rational known to be integral.
pub fn rat_to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NonIntegralExponent);
    }
    r.to_integer().to_i64().ok_or(Error::ExponentOutOfRange)
}

/// Scale a set of rationals by the unique positive factor that makes all
/// of them integers with overall gcd 1. Returns the scaled integers (as
/// rationals) in input order.
pub fn normalize_to_coprime_integers(values: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.into_iter()
        .map(|i| BigRational::from_integer(i / &g))
        .collect()
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod rat_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let raw = RawRat::deserialize(d)?;
        raw.into_rat().map_err(serde::de::Error::custom)
    }

    /// Accepts `"p/q"`, `"p"`, or a bare JSON integer on input.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum RawRat {
        Text(String),
        Int(i64),
    }

    impl RawRat {
        pub fn into_rat(self) -> Result<Rat> {
            match self {
                RawRat::Text(s) => parse_rat(&s),
                RawRat::Int(n) => Ok(rat_int(n)),
            }
        }
    }
}
