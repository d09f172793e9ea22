//! Exact sign evaluation and bisection root isolation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::LambdaPoly;
use super::rational::{half, to_decimal, to_fraction_string};
use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Rational) -> Self {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

pub fn sign_at(p: &LambdaPoly, x: &Rational) -> Sign {
    let v = p.eval_cleared(x);
    if v.is_zero() {
        Sign::Zero
    } else if v.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// A rational interval pinning a root of some polynomial.
///
/// Normally `lo < hi` with opposite nonzero signs at the ends. Bisection may
/// land on an exact root, in which case `lo == hi` and the bracket is that
/// root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBracket {
    #[serde(with = "super::rational::fraction")]
    pub lo: Rational,
    #[serde(with = "super::rational::fraction")]
    pub hi: Rational,
}

impl RootBracket {
    /// Validates the sign-change invariant for `p`.
    pub fn new(p: &LambdaPoly, lo: Rational, hi: Rational) -> Result<Self> {
        let bracket = Self { lo, hi };
        if bracket.is_valid_for(p) && bracket.lo < bracket.hi {
            Ok(bracket)
        } else {
            Err(bracket.invalid())
        }
    }

    fn invalid(&self) -> Error {
        Error::InvalidBracket {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
        }
    }

    pub fn is_valid_for(&self, p: &LambdaPoly) -> bool {
        if self.lo == self.hi {
            return sign_at(p, &self.lo) == Sign::Zero;
        }
        if self.lo > self.hi {
            return false;
        }
        let (a, b) = (sign_at(p, &self.lo), sign_at(p, &self.hi));
        a != Sign::Zero && b != Sign::Zero && a != b
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * half()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strictly below every point of `other`.
    pub fn is_below(&self, other: &RootBracket) -> bool {
        self.hi < other.lo
    }

    pub fn is_within(&self, other: &RootBracket) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Midpoint to six places, the reporting convention used by the CLI.
    pub fn display_midpoint(&self) -> String {
        to_decimal(&self.midpoint(), 6)
    }
}

impl fmt::Display for RootBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            to_fraction_string(&self.lo),
            to_fraction_string(&self.hi)
        )
    }
}

/// Midpoint bisection until `hi − lo ≤ width`.
///
/// Deterministic: every returned endpoint is a dyadic refinement of the input
/// bracket. If a midpoint is an exact root the degenerate bracket `[m, m]` is
/// returned.
pub fn isolate_root(p: &LambdaPoly, bracket: &RootBracket, width: &Rational) -> Result<RootBracket> {
    if !width.is_positive() {
        return Err(Error::InvalidArgument(format!("width must be positive, got {width}")));
    }
    if bracket.lo >= bracket.hi || !bracket.is_valid_for(p) {
        return Err(bracket.invalid());
    }
    let lo_sign = sign_at(p, &bracket.lo);
    let mut lo = bracket.lo.clone();
    let mut hi = bracket.hi.clone();
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        match sign_at(p, &mid) {
            Sign::Zero => {
                return Ok(RootBracket {
                    lo: mid.clone(),
                    hi: mid,
                })
            }
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootBracket { lo, hi })
}
