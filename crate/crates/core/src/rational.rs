//! Exact rational scalars.
//!
//! Every algebra value in this crate is an arbitrary-precision rational kept
//! in lowest terms with a positive denominator. The arithmetic itself comes
//! from `num-rational`; this module only adds the constructors and the
//! `"p/q"` text form used by reports.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^n` as a rational.
pub fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        one()
    } else {
        -one()
    }
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let trimmed = s.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}
