//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, zero stored as `0/1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Generalised binomial coefficient `x (x-1) ... (x-k+1) / k!` for integer `x`.
pub fn binomial(x: i64, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc *= rat(x - i);
        acc /= rat(i + 1);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

/// `base^exp` for a (possibly negative) integer exponent. Panics on `0^-n`.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        assert!(!base.is_zero(), "zero to a negative power");
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub(crate) fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer().clone()).ok()
}

