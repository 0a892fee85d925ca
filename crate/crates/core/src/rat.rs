//! Exact rational arithmetic helpers.
//!
//! Every degree in this crate is a [`Rat`] (arbitrary-precision rational,
//! always in canonical form). No floating point is used anywhere in the
//! semantics. Degrees are printed as `num/den` in all artifacts of record;
//! decimal literals are accepted on input only and converted exactly.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, canonical form enforced by construction.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RatError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// True iff 0 <= r <= 1.
pub fn in_unit(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

/// Parses `7/10`, `0.7`, `1`, or `.5` into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat, RatError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RatError::Malformed(text.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| RatError::Malformed(text.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| RatError::Malformed(text.to_string()))?;
        if d.is_zero() {
            return Err(RatError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
            return Err(RatError::Malformed(text.to_string()));
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let whole: BigInt = int_part
            .parse()
            .map_err(|_| RatError::Malformed(text.to_string()))?;
        let digits: BigInt = frac_part
            .parse()
            .map_err(|_| RatError::Malformed(text.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let negative = s.starts_with('-');
        let frac = Rat::new(digits, scale);
        let whole = Rat::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| RatError::Malformed(text.to_string()))?;
    Ok(Rat::from_integer(n))
}

/// Formats a rational as `num/den`, always including the denominator.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
