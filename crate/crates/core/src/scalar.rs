//! The scalar abstraction shared by intervals, images and unions.
//!
//! Everything that only needs ring operations and an order is generic over
//! [`Scalar`]. Certificates and threshold isolation are pinned to the exact
//! [`Rational`](crate::Rational) type: a borderline comparison in `f64` is not
//! a proof of anything.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Clone + PartialOrd + Num + Neg<Output = Self> + Debug + Display {
    fn from_bigint(value: &BigInt) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_bigint(&BigInt::from(value))
    }

    /// `true` when the type rounds (so results are approximations, not proofs).
    fn is_inexact() -> bool;
}

impl Scalar for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn is_inexact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn from_bigint(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }

    fn is_inexact() -> bool {
        true
    }
}

impl Scalar for f32 {
    fn from_bigint(value: &BigInt) -> Self {
        value.to_f32().unwrap_or(f32::NAN)
    }

    fn is_inexact() -> bool {
        true
    }
}

/// `base^exp` by repeated squaring, for any scalar.
pub fn pow<T: Scalar>(base: &T, exp: usize) -> T {
    num_traits::pow::pow(base.clone(), exp)
}

pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}
