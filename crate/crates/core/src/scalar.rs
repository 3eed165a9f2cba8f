//! Number types shared by the exact and floating-point code paths.
//!
//! Coefficient identities are exact when the confluent parameter is rational, so the
//! coefficient builders are generic over [`Scalar`], which is implemented for `f64` and
//! for arbitrary-precision rationals.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive {
    fn to_f64(&self) -> f64;

    /// `Some(n)` when the value is exactly the nonnegative integer `n`.
    fn as_nonneg_integer(&self) -> Option<usize>;

    fn from_usize_exact(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize is representable")
    }

    /// `(-1)^k`.
    fn sign_power(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_nonneg_integer(&self) -> Option<usize> {
        if self.is_finite() && *self >= 0.0 && self.fract() == 0.0 && *self <= usize::MAX as f64 {
            Some(*self as usize)
        } else {
            None
        }
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_nonneg_integer(&self) -> Option<usize> {
        if self.is_integer() && !self.is_negative() {
            self.to_integer().to_usize()
        } else {
            None
        }
    }
}

/// `n!` in the scalar type.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize_exact(k))
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-1.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || {
        Error::param(
            "rational",
            format!("cannot parse {text:?} as a rational number"),
        )
    };
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::param("rational", "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let scale = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Serializes as `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::param("value", format!("{x} is not finite")))
}
