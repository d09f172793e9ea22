use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, OpenInterval};
use crate::scalar::{max_of, Scalar};

/// A finite union of closed intervals in canonical form: sorted, and every
/// pair of consecutive parts separated by a strictly positive gap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalUnion<T> {
    parts: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalUnion<T> {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn single(interval: Interval<T>) -> Self {
        Self { parts: vec![interval] }
    }

    /// Merges touching and overlapping parts. Order-insensitive and idempotent.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interval<T>>,
    {
        let mut parts: Vec<Interval<T>> = raw.into_iter().collect();
        if let Some(bad) = parts.iter().find(|iv| iv.lo > iv.hi) {
            return Err(Error::EmptyInterval {
                lo: bad.lo.to_string(),
                hi: bad.hi.to_string(),
            });
        }
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal));
        Ok(Self {
            parts: merge_sorted(parts),
        })
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Interval<T>> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn hull(&self) -> Option<Interval<T>> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval::new_unchecked(first.lo.clone(), last.hi.clone()))
    }

    pub fn contains(&self, x: &T) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Union of two canonical unions; associative and commutative.
    pub fn merge(&self, other: &Self) -> Self {
        let mut all = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = match (self.parts.get(i), other.parts.get(j)) {
                (Some(a), Some(b)) => a.lo <= b.lo,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                all.push(self.parts[i].clone());
                i += 1;
            } else {
                all.push(other.parts[j].clone());
                j += 1;
            }
        }
        Self {
            parts: merge_sorted(all),
        }
    }

    /// Every part of `self` lies inside some part of `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.parts
            .iter()
            .all(|p| other.parts.iter().any(|q| q.contains_interval(p)))
    }

    /// Open gaps between consecutive parts, i.e. the complement within the hull.
    pub fn gaps(&self) -> Vec<OpenInterval<T>> {
        self.parts
            .windows(2)
            .map(|w| OpenInterval {
                lo: w[0].hi.clone(),
                hi: w[1].lo.clone(),
            })
            .collect()
    }
}

impl<T: Scalar> Default for IntervalUnion<T> {
    fn default() -> Self {
        Self::empty()
    }
}

fn merge_sorted<T: Scalar>(sorted: Vec<Interval<T>>) -> Vec<Interval<T>> {
    let mut out: Vec<Interval<T>> = Vec::with_capacity(sorted.len());
    for iv in sorted {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                last.hi = max_of(last.hi.clone(), iv.hi);
            }
            _ => out.push(iv),
        }
    }
    out
}

impl<T: Scalar> fmt::Display for IntervalUnion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalUnion<crate::Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion<crate::Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Interval<crate::Rational>>::deserialize(d)?;
        Self::normalize(parts).map_err(serde::de::Error::custom)
    }
}
