//! Rank-m image unions, gap detection, and the three end-to-end certificates.
//!
//! A finite-rank union is an outer approximation: the rank-m intervals contain
//! `C_λ`, so a gap found at rank m is a gap of the true image, while a union
//! without gaps proves nothing. Only the lemma-based certificates upgrade
//! finite checks to statements about the Cantor set.

mod certificate;
mod union;

pub use certificate::{
    certify_circle_continuum, certify_fk_coverage, certify_st_continuum, Certificate, CertificateKind, CheckRecord,
    Conclusion,
};
pub use union::IntervalUnion;

use serde::Serialize;

use crate::cantor::enumerate_rank_at;
use crate::error::{Error, Result};
use crate::interval::{Interval, OpenInterval};
use crate::scalar::{pow, Scalar};
use crate::Rational;
use rayon::prelude::*;

/// Printed alongside every gap report.
pub const ONE_SIDED_NOTE: &str =
    "finite-rank unions over-approximate the image: a gap refutes coverage, a gap-free union certifies nothing";

/// Union of `f_k(I, J)` over all `4^rank` ordered pairs of rank-`rank` basic
/// intervals.
pub fn image_union_fk<T>(k: usize, lambda: &T, rank: usize) -> Result<IntervalUnion<T>>
where
    T: Scalar + Send + Sync,
{
    if k == 0 {
        return Err(Error::InvalidArgument("exponent k must be at least 1".into()));
    }
    let half = T::one() / (T::one() + T::one());
    if !(*lambda > T::zero() && *lambda < half) {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    let intervals = enumerate_rank_at(rank, lambda);
    // For fixed I the images [loᵏ·J.lo, hiᵏ·J.hi] are already sorted in J,
    // so each row is normalized in one linear pass.
    let rows = intervals.par_iter().map(|i| {
        let (lo_k, hi_k) = (pow(&i.lo, k), pow(&i.hi, k));
        let row = intervals
            .iter()
            .map(|j| Interval::new_unchecked(lo_k.clone() * j.lo.clone(), hi_k.clone() * j.hi.clone()));
        IntervalUnion::normalize(row).expect("images of nonempty intervals are nonempty")
    });
    Ok(rows.reduce(IntervalUnion::empty, |a, b| a.merge(&b)))
}

/// A union together with its open complementary gaps inside `[min, max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport<T> {
    pub union: IntervalUnion<T>,
    pub gaps: Vec<OpenInterval<T>>,
}

impl<T: Scalar> GapReport<T> {
    pub fn refutes_coverage(&self) -> bool {
        !self.gaps.is_empty()
    }
}

impl Serialize for GapReport<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            union: &'a IntervalUnion<Rational>,
            gaps: &'a [OpenInterval<Rational>],
            refutes_coverage: bool,
            note: &'static str,
        }
        Row {
            union: &self.union,
            gaps: &self.gaps,
            refutes_coverage: self.refutes_coverage(),
            note: ONE_SIDED_NOTE,
        }
        .serialize(s)
    }
}

pub fn find_gaps<T: Scalar>(union: &IntervalUnion<T>) -> GapReport<T> {
    GapReport {
        union: union.clone(),
        gaps: union.gaps(),
    }
}

/// `kind,lo,hi` rows for parts and gaps, exact fractions.
pub fn gap_report_csv(report: &GapReport<Rational>) -> String {
    use crate::exactmath::to_fraction_string as f;
    let mut out = String::from("kind,lo,hi\n");
    for p in report.union.parts() {
        out.push_str(&format!("part,{},{}\n", f(&p.lo), f(&p.hi)));
    }
    for g in &report.gaps {
        out.push_str(&format!("gap,{},{}\n", f(&g.lo), f(&g.hi)));
    }
    out
}
