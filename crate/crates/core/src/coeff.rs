//! Scalar types usable as polynomial coefficients.
//!
//! Everything in the crate is generic over an exact integer type. Machine
//! integers use checked arithmetic so that overflow surfaces as
//! [`Error::Overflow`](crate::Error::Overflow); [`num_bigint::BigInt`] never
//! overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact integer coefficient ring.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other).ok_or(Error::Overflow)
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }

    fn try_neg(&self) -> Result<Self> {
        Self::zero().try_sub(self)
    }

    fn from_int(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or(Error::Overflow)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn machine_overflow_is_reported() {
        assert_eq!(i64::MAX.try_add(&1), Err(Error::Overflow));
        assert_eq!(i64::MIN.try_neg(), Err(Error::Overflow));
        assert_eq!((i64::MAX / 2 + 1).try_mul(&2), Err(Error::Overflow));
    }

    #[test]
    fn bigint_does_not_overflow() {
        let big = BigInt::from(i64::MAX);
        let sum = big.try_add(&BigInt::from(1)).unwrap();
        assert_eq!(sum.to_string(), "9223372036854775808");
    }
}
