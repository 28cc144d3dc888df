//! Exact coefficient rings.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

/// Coefficient ring for formal combinations of diagrams.
///
/// Implemented for arbitrary precision integers (the default) and rationals.
pub trait Coeff:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Exact quotient when the ring allows it.
    fn checked_div_exact(&self, other: &Self) -> Option<Self>;

    fn to_rational(&self) -> BigRational;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, other);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// `(-1)^e` as a coefficient.
pub fn sign<C: Coeff>(e: u32) -> C {
    if e % 2 == 0 {
        C::one()
    } else {
        -C::one()
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_unit<C: Coeff>(c: &C) -> bool {
    c.abs().is_one()
}
