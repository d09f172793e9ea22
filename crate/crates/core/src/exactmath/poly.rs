//! Integer-coefficient polynomials in the contraction ratio λ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<BigInt>,
}

impl LambdaPoly {
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs([c])
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        Self::from_coeffs([0, 1])
    }

    /// `c·λ^degree`.
    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::from(c);
        Self::from_coeffs(coeffs)
    }

    /// `1 − λ`, which recurs in every endpoint.
    pub fn one_minus_lambda() -> Self {
        Self::from_coeffs([1, -1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::from_coeffs(self.coeffs.iter().map(|x| x * &c))
    }

    /// Horner evaluation in any scalar type.
    pub fn eval<T: Scalar>(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + T::from_bigint(c))
    }

    /// `p(n/d)·d^deg` for `x = n/d` in lowest terms, in integers only. Has the
    /// sign of `p(x)` since `d > 0`.
    pub fn eval_cleared(&self, x: &Rational) -> BigInt {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dp = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dp;
            dp *= d;
        }
        acc
    }
}

impl From<i64> for LambdaPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;

    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::from_coeffs((0..n).map(|i| {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
            a + b
        }))
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;

    fn neg(self) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|c| -c))
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;

    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self + &(-rhs)
    }
}

impl Mul<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;

    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LambdaPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<LambdaPoly> for LambdaPoly {
            type Output = LambdaPoly;
            fn $m(self, rhs: LambdaPoly) -> LambdaPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LambdaPoly> for LambdaPoly {
            type Output = LambdaPoly;
            fn $m(self, rhs: &LambdaPoly) -> LambdaPoly { (&self).$m(rhs) }
        }
        impl $tr<LambdaPoly> for &LambdaPoly {
            type Output = LambdaPoly;
            fn $m(self, rhs: LambdaPoly) -> LambdaPoly { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LambdaPoly {
    type Output = LambdaPoly;

    fn neg(self) -> LambdaPoly {
        -&self
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = deg == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "λ")?,
                d => write!(f, "λ^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, ratio};
    use proptest::prelude::*;

    fn quad() -> LambdaPoly {
        LambdaPoly::from_coeffs([-3, 6, 1])
    }

    proptest! {
        #[test]
        fn cleared_eval_matches_scaled_eval(c in proptest::collection::vec(-50i64..50, 0..8), n in -40i64..40, d in 1i64..40) {
            let p = LambdaPoly::from_coeffs(c);
            let x = ratio(n, d);
            let deg = p.degree().unwrap_or(0) as u32;
            let scaled = p.eval(&x) * Rational::from_integer(x.denom().pow(deg));
            prop_assert_eq!(Rational::from_integer(p.eval_cleared(&x)), scaled);
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(LambdaPoly::zero().eval(&ratio(1, 3)), int(0));
        assert_eq!(quad().eval(&ratio(1, 2)), ratio(1, 4));

        let p = LambdaPoly::from_coeffs([1, -2, -1, 0, 1]);
        let v = p.eval(&ratio(4258, 10000));
        assert!(v < int(0));
        assert!(-v < ratio(1, 10000));
    }

    #[test]
    fn trims_and_displays() {
        let p = LambdaPoly::lambda() - LambdaPoly::lambda();
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(quad().to_string(), "λ^2 + 6λ - 3");
        assert_eq!(
            LambdaPoly::from_coeffs([1, -2, -1, 0, 1]).to_string(),
            "λ^4 - λ^2 - 2λ + 1"
        );
        assert_eq!(LambdaPoly::from_coeffs([0, -1]).to_string(), "-λ");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = LambdaPoly::one_minus_lambda();
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(0), LambdaPoly::one());
    }

    #[test]
    fn float_eval_agrees() {
        let x = 0.3_f64;
        let v: f64 = quad().eval(&x);
        assert!((v - (0.09 + 1.8 - 3.0)).abs() < 1e-12);
    }

    fn small_poly() -> impl Strategy<Value = LambdaPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(LambdaPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn eval_is_a_ring_homomorphism(p in small_poly(), q in small_poly(), n in -50i64..50, d in 1i64..50) {
            let x: Rational = ratio(n, d);
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }
    }
}
