//! Images of interval pairs under `f(x, y) = xy` and `f_k(x, y) = xᵏy`,
//! their four-piece refinements, and the pair conditions that drive the
//! covering arguments.
//!
//! On non-negative intervals both maps are monotone in each argument, so the
//! image of a box is spanned by its lower-left and upper-right corners.

mod conditions;
mod decompose;

pub use conditions::{
    below_half, binomial_tail_inequality, circle_pair_condition, double_cover_condition, double_cover_hypothesis,
    golden_side_condition, lambda_k_side_condition, power_pair_condition, power_refinement_hypothesis,
    refinement_hypothesis, Comparison, ConditionReport, PowerConditionVariant, Relation,
};
pub use decompose::{decompose_f, decompose_fk, double_cover_window, PairDecomposition};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::{pow, Scalar};

/// `f(I, J) = [I.lo·J.lo, I.hi·J.hi]`.
pub fn image_f<T: Scalar>(i: &Interval<T>, j: &Interval<T>) -> Result<Interval<T>> {
    image_fk(1, i, j)
}

/// `f_k(I, J) = [I.lo^k·J.lo, I.hi^k·J.hi]`.
pub fn image_fk<T: Scalar>(k: usize, i: &Interval<T>, j: &Interval<T>) -> Result<Interval<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("exponent k must be at least 1".into()));
    }
    if !i.is_non_negative() || !j.is_non_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(Interval::new_unchecked(
        pow(&i.lo, k) * j.lo.clone(),
        pow(&i.hi, k) * j.hi.clone(),
    ))
}
