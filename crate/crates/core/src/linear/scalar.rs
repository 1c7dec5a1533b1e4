//! Exact scalar fields used by the matrix kernels.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// An exact field of characteristic zero.
///
/// Every algorithm in [`crate::linear`] is written against this trait, so the
/// same code runs over plain rationals and over cyclotomic fields.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// The value as a rational, if it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// A string that is equal for equal field elements.
    fn canonical_key(&self) -> String;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

impl Scalar for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn canonical_key(&self) -> String {
        format_rational(self)
    }
}

/// Formats a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduces a rational into `[0, 1)`.
pub fn frac_mod_one(q: &Rational) -> Rational {
    let f = q - q.floor();
    if f.is_negative() {
        f + Rational::one()
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(rat(-4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(5, 1)), "5");
    }

    #[test]
    fn frac_part() {
        assert_eq!(frac_mod_one(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac_mod_one(&rat(7, 2)), rat(1, 2));
    }
}
