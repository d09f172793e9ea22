use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::{parse_rational, to_fraction_string};
use crate::scalar::{max_of, min_of, Scalar};
use crate::Rational;

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// No ordering check; callers guarantee `lo ≤ hi`.
    pub fn new_unchecked(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_in_interior(&self, x: &T) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_non_negative(&self) -> bool {
        self.lo >= T::zero()
    }

    pub fn scale(&self, factor: &T) -> Self {
        let a = self.lo.clone() * factor.clone();
        let b = self.hi.clone() * factor.clone();
        Self {
            lo: min_of(a.clone(), b.clone()),
            hi: max_of(a, b),
        }
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / (T::one() + T::one())
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: min_of(self.lo.clone(), other.lo.clone()),
            hi: max_of(self.hi.clone(), other.hi.clone()),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&to_fraction_string(&self.lo))?;
        t.serialize_element(&to_fraction_string(&self.hi))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Interval<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(de::Error::custom)?;
        Interval::new(lo, hi).map_err(de::Error::custom)
    }
}

/// An open interval `(lo, hi)`; used for gaps and double-cover windows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> OpenInterval<T> {
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo < x && x < &self.hi
    }
}

impl<T: fmt::Display> fmt::Display for OpenInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl Serialize for OpenInterval<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&to_fraction_string(&self.lo))?;
        t.serialize_element(&to_fraction_string(&self.hi))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for OpenInterval<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(de::Error::custom)?;
        Ok(OpenInterval { lo, hi })
    }
}
