//! Exact rational constants.
//!
//! Backed by `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow2(exp: u32) -> Rational {
    Rational::from_integer(BigInt::one() << exp)
}

/// Writes a rational as `p/q`, always including the denominator.
pub fn format_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Writes a rational as `p` when integral and `p/q` otherwise.
pub fn format_compact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format_fraction(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p`, `p/q` or `-p/q`. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return Err(err());
    }
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// True when the value lies in `{0, 1}`.
pub fn is_zero_one(value: &Rational) -> bool {
    value.is_zero() || value.is_one()
}

/// True when the value lies in `{-1, 0, 1}`.
pub fn is_signed_unit_or_zero(value: &Rational) -> bool {
    value.is_integer() && value.numer().abs() <= BigInt::one()
}
