//! Exact rational arithmetic and the binomial coefficients the recursions need.
//!
//! Every value produced by this crate is a [`Rational`]. No floating point is
//! used anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds the normalized rational `n / d`.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n.into(), d))
}

/// `rat` for call sites whose denominator is a known nonzero constant.
pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `C(n, k)`, defined as zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    // acc stays integral: after step t it equals C(n - k + t, t).
    for t in 1..=k {
        acc *= n - k + t;
        acc /= t;
    }
    acc
}

/// Numerator and denominator as decimal strings.
pub fn to_parts(value: &Rational) -> (String, String) {
    (value.numer().to_string(), value.denom().to_string())
}

/// Inverse of [`to_parts`]; the result is re-normalized.
pub fn from_parts(numerator: &str, denominator: &str) -> Option<Rational> {
    let n: BigInt = numerator.parse().ok()?;
    let d: BigInt = denominator.parse().ok()?;
    rat(n, d).ok()
}
