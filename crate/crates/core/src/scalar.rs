//! Scalar abstraction shared by the exact and the floating-point layers.
//!
//! The group law, the automorphism families and the metric are polynomial in
//! the coordinates, so the same code evaluates them over exact rationals (for
//! certificates) and over `f64`/`f32` (for the discretisation).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// A field-like number type the group and metric code can be evaluated over.
pub trait Scalar:
    Num + Signed + Clone + Debug + Display + PartialOrd + Send + Sync + 'static
{
    /// The value `numer / denom`. `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        (numer as f64 / denom as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for Rational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Fixed-width exact rational for bulk exhaustive checks on small inputs.
/// Callers must bound their inputs so that no intermediate leaves `i128`;
/// see [`small_rational`].
pub type SmallRational = Ratio<i128>;

impl Scalar for SmallRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(i128::from(numer), i128::from(denom))
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// `r` as a [`SmallRational`] when numerator and denominator are at most
/// `2^16` in magnitude, which keeps degree-four polynomial expressions in
/// `r` and integers up to `2^10` far inside `i128`.
pub fn small_rational(r: &Rational) -> Option<SmallRational> {
    const LIMIT: i128 = 1 << 16;
    let n = r.numer().to_i128()?;
    let d = r.denom().to_i128()?;
    (n.abs() <= LIMIT && d <= LIMIT).then(|| Ratio::new(n, d))
}

/// Shorthand for the exact rational `numer / denom`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::from_ratio(numer, denom)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// True when `r ∈ ℤ + 1/2`.
pub fn is_half_odd(r: &Rational) -> bool {
    let twice = r * Rational::from_int(2);
    is_integer(&twice) && twice.numer().is_odd()
}

/// `r` as an `i64` if it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, an integer, or a finite decimal (`0.25`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| malformed())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp = i32::from_str(&s[pos + 1..]).map_err(|_| malformed())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(malformed());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| malformed())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_int(10);
    for _ in 0..scale.unsigned_abs() {
        if scale > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Ok(if negative { -value } else { value })
}

/// Reduces `t` into `[0, 1)`.
pub fn reduce_mod_one(t: &Rational) -> Rational {
    t - t.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn integrality_predicates() {
        assert!(is_integer(&rat(4, 2)));
        assert!(!is_integer(&rat(1, 2)));
        assert!(is_half_odd(&rat(1, 2)));
        assert!(is_half_odd(&rat(-3, 2)));
        assert!(!is_half_odd(&rat(1, 1)));
        assert!(!is_half_odd(&rat(1, 4)));
        assert_eq!(reduce_mod_one(&rat(5, 4)), rat(1, 4));
        assert_eq!(reduce_mod_one(&rat(-1, 4)), rat(3, 4));
    }
}
