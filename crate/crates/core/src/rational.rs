//! Exact rational scalars.
//!
//! All inertia values and weights are carried as [`Rational`] so that the
//! zero tests inside the diagonalization are exact.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/4"`, `"0.125"` or `"1e-6"` into an exact rational.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if s.contains('/') {
        let r = Rational::from_str(s).map_err(|_| err())?;
        return Ok(r);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{whole}{frac}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Falls back to a lossy division for values whose parts overflow f64.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// JSON shape for exact rationals: numerator and denominator as strings plus
/// a decimal approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub approx: f64,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            approx: to_f64(r),
        }
    }
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson::from(&r)
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, ParseRationalError> {
        let err = || ParseRationalError(format!("{}/{}", self.num, self.den));
        let num = BigInt::from_str(&self.num).map_err(|_| err())?;
        let den = BigInt::from_str(&self.den).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(num, den))
    }
}
