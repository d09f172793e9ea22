//! Binary addresses and basic intervals of the middle Cantor set `C_λ`.
//!
//! `C_λ` is the attractor of `φ₀(x) = λx` and `φ₁(x) = λx + (1 − λ)`. The basic
//! interval with address `i₁…iₙ` is `φ_{i₁} ∘ ⋯ ∘ φ_{iₙ}([0, 1])`; its left
//! endpoint is `Σ_{j : i_j = 1} (1 − λ)λ^{j−1}` and its length is `λⁿ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::rational::check_lambda;
use crate::exactmath::LambdaPoly;
use crate::interval::Interval;
use crate::scalar::{pow, Scalar};
use crate::Rational;

/// A finite word over `{0, 1}`; the empty word addresses `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if digits.iter().any(|&d| d > 1) {
            return Err(Error::InvalidArgument(format!(
                "address digits must be 0 or 1: {digits:?}"
            )));
        }
        Ok(Self(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, digit: u8) -> Self {
        debug_assert!(digit <= 1);
        let mut d = self.0.clone();
        d.push(digit);
        Self(d)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `0ᵐσ`: the address of `λᵐ·I_σ`.
    pub fn with_zero_prefix(&self, m: usize) -> Self {
        let mut d = vec![0u8; m];
        d.extend_from_slice(&self.0);
        Self(d)
    }

    /// The `2^extra` descendants at rank `rank() + extra`, in lexicographic order.
    pub fn descendants(&self, extra: usize) -> Vec<Address> {
        let mut out = vec![self.clone()];
        for _ in 0..extra {
            out = out.iter().flat_map(|a| [a.child(0), a.child(1)]).collect();
        }
        out
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidArgument(format!("invalid address {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// A basic interval with its left endpoint kept symbolically in λ, so the
/// same object serves threshold derivation and evaluation at a concrete λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicInterval {
    address: Address,
    left: LambdaPoly,
}

impl BasicInterval {
    pub fn unit() -> Self {
        Self::from_address(Address::empty())
    }

    pub fn from_address(address: Address) -> Self {
        let mut left = LambdaPoly::zero();
        for (j, &d) in address.digits().iter().enumerate() {
            if d == 1 {
                left = left + LambdaPoly::one_minus_lambda() * LambdaPoly::monomial(1, j);
            }
        }
        Self { address, left }
    }

    pub fn parse(address: &str) -> Result<Self> {
        Ok(Self::from_address(address.parse()?))
    }

    pub fn address(&self) -> &Address {
        &self.address
    }

    pub fn rank(&self) -> usize {
        self.address.rank()
    }

    pub fn left(&self) -> &LambdaPoly {
        &self.left
    }

    /// `λⁿ`.
    pub fn length(&self) -> LambdaPoly {
        LambdaPoly::monomial(1, self.rank())
    }

    pub fn right(&self) -> LambdaPoly {
        &self.left + &self.length()
    }

    /// The left and right children, one rank deeper.
    pub fn children(&self) -> (BasicInterval, BasicInterval) {
        let n = self.rank();
        let left = BasicInterval {
            address: self.address.child(0),
            left: self.left.clone(),
        };
        let shift = LambdaPoly::monomial(1, n) - LambdaPoly::monomial(1, n + 1);
        let right = BasicInterval {
            address: self.address.child(1),
            left: &self.left + &shift,
        };
        (left, right)
    }

    pub fn contains(&self, other: &BasicInterval) -> bool {
        self.address.is_prefix_of(&other.address)
    }

    /// Endpoints at a concrete λ, in any scalar type. No range check.
    pub fn eval_at<T: Scalar>(&self, lambda: &T) -> Interval<T> {
        let lo = self.left.eval(lambda);
        let hi = lo.clone() + pow(lambda, self.rank());
        Interval::new_unchecked(lo, hi)
    }
}

impl fmt::Display for BasicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I[{}] = [{}, {}]", self.address, self.left, self.right())
    }
}

/// Exact endpoints of the basic interval with the given address, summed
/// directly rather than through the symbolic endpoint.
pub fn interval_of(address: &Address, lambda: &Rational) -> Result<Interval<Rational>> {
    check_lambda(lambda)?;
    // With λ = p/q the left endpoint times qⁿ is an integer; build it by
    // Horner's rule and reduce once.
    let (p, q) = (lambda.numer(), lambda.denom());
    let gap = q - p;
    let mut numer = BigInt::zero();
    let mut pm = BigInt::one();
    for &d in address.digits() {
        numer *= q;
        if d == 1 {
            numer += &gap * &pm;
        }
        pm *= p;
    }
    let denom = q.pow(address.rank() as u32);
    let hi = Rational::new(&numer + pm, denom.clone());
    Ok(Interval::new_unchecked(Rational::new(numer, denom), hi))
}

/// `[Σ_{i_j = 1} (1−λ)λ^{j−1}, · + λⁿ]` in any scalar type. No range check.
pub fn address_interval_at<T: Scalar>(address: &Address, lambda: &T) -> Interval<T> {
    let mut left = T::zero();
    let mut step = T::one() - lambda.clone();
    for &d in address.digits() {
        if d == 1 {
            left = left + step.clone();
        }
        step = step * lambda.clone();
    }
    let len = pow(lambda, address.rank());
    Interval::new_unchecked(left.clone(), left + len)
}

/// All `2ⁿ` basic intervals of rank `n`, in address order (which is also
/// left-endpoint order for λ < 1/2).
pub fn enumerate_rank(n: usize) -> Vec<BasicInterval> {
    let mut level = vec![BasicInterval::unit()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|b| {
                let (l, r) = b.children();
                [l, r]
            })
            .collect();
    }
    level
}

/// Rank-`n` intervals evaluated at λ, built numerically by doubling rather
/// than through the symbolic endpoints.
pub fn enumerate_rank_at<T: Scalar>(n: usize, lambda: &T) -> Vec<Interval<T>> {
    let one_minus = T::one() - lambda.clone();
    let mut lefts = vec![T::zero()];
    let mut step = one_minus; // (1 − λ)λ^level
    for _ in 0..n {
        lefts = lefts.into_iter().flat_map(|a| [a.clone(), a + step.clone()]).collect();
        step = step * lambda.clone();
    }
    let len = pow(lambda, n);
    lefts
        .into_iter()
        .map(|a| Interval::new_unchecked(a.clone(), a + len.clone()))
        .collect()
}

/// Checked variant of [`enumerate_rank_at`] for exact λ.
pub fn enumerate_rank_exact(n: usize, lambda: &Rational) -> Result<Vec<Interval<Rational>>> {
    check_lambda(lambda)?;
    Ok(enumerate_rank_at(n, lambda))
}
