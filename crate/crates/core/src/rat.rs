//! Exact rational scalars. `Rational` is a reduced big-integer fraction
//! with positive denominator; all arithmetic in the crate goes through it.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`; panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"` or `"p/q"` with optional sign on the numerator.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| Error::BadRational)?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| Error::BadRational)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::BadRational);
    }
    Ok(Rational::new(n, d))
}

/// Renders as `"p"` for integers and `"p/q"` otherwise, denominator positive.
pub fn render(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denom_lcm(values: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = num_integer::lcm(l, v.denom().abs());
    }
    l
}
