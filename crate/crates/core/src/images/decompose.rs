use crate::cantor::BasicInterval;
use crate::coverage::IntervalUnion;
use crate::error::{Error, Result};
use crate::interval::{Interval, OpenInterval};
use crate::scalar::{pow, Scalar};

/// The images of the four child pairs of `(I, J)`, kept in the labelled order
/// `[lᵢ, rᵢ]`, i = 1..4: (left, left), (left, right), (right, left),
/// (right, right) for `f`, and the matching `[uᵢ, vᵢ]` for `f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomposition<T> {
    pub parts: [Interval<T>; 4],
}

impl<T: Scalar> PairDecomposition<T> {
    /// `r₁ ≥ l₂`, `r₂ ≥ l₃`, `r₃ ≥ l₄`: the four pieces chain into one interval.
    pub fn check_cover(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].hi >= w[1].lo)
    }

    /// `l₃ < r₁` and `l₄ < r₂`, both strict.
    pub fn check_double_cover(&self) -> bool {
        let [p1, p2, p3, p4] = &self.parts;
        p3.lo < p1.hi && p4.lo < p2.hi
    }

    pub fn union(&self) -> IntervalUnion<T> {
        IntervalUnion::normalize(self.parts.iter().cloned()).expect("decomposition pieces are nonempty")
    }
}

fn corners<T: Scalar>(i: &BasicInterval, j: &BasicInterval, lambda: &T) -> Result<(T, T, T, T, usize)> {
    if i.rank() != j.rank() {
        return Err(Error::RankMismatch(i.rank(), j.rank()));
    }
    let n = i.rank();
    let a = i.left().eval(lambda);
    let b = j.left().eval(lambda);
    let ln = pow(lambda, n);
    let ln1 = ln.clone() * lambda.clone();
    Ok((a, b, ln, ln1, n))
}

/// The four intervals of `f(I′, J′)` written exactly as
///
/// ```text
/// [ab, (a+λⁿ⁺¹)(b+λⁿ⁺¹)]
/// [ab + a(1−λ)λⁿ, (a+λⁿ⁺¹)(b+λⁿ)]
/// [ab + b(1−λ)λⁿ, (a+λⁿ)(b+λⁿ⁺¹)]
/// [(a+λⁿ−λⁿ⁺¹)(b+λⁿ−λⁿ⁺¹), (a+λⁿ)(b+λⁿ)]
/// ```
pub fn decompose_f<T: Scalar>(i: &BasicInterval, j: &BasicInterval, lambda: &T) -> Result<PairDecomposition<T>> {
    let (a, b, ln, ln1, _) = corners(i, j, lambda)?;
    let one_minus = T::one() - lambda.clone();
    let ab = a.clone() * b.clone();
    let gap = ln.clone() - ln1.clone();
    let l1 = ab.clone();
    let r1 = (a.clone() + ln1.clone()) * (b.clone() + ln1.clone());
    let l2 = ab.clone() + a.clone() * one_minus.clone() * ln.clone();
    let r2 = (a.clone() + ln1.clone()) * (b.clone() + ln.clone());
    let l3 = ab + b.clone() * one_minus * ln.clone();
    let r3 = (a.clone() + ln.clone()) * (b.clone() + ln1);
    let l4 = (a.clone() + gap.clone()) * (b.clone() + gap);
    let r4 = (a + ln.clone()) * (b + ln);
    Ok(PairDecomposition {
        parts: [
            Interval::new_unchecked(l1, r1),
            Interval::new_unchecked(l2, r2),
            Interval::new_unchecked(l3, r3),
            Interval::new_unchecked(l4, r4),
        ],
    })
}

/// The four intervals `[uᵢ, vᵢ]` of `f_k(I′, J′)`:
///
/// ```text
/// [aᵏb, (a+λⁿ⁺¹)ᵏ(b+λⁿ⁺¹)]
/// [aᵏb + aᵏλⁿ(1−λ), (a+λⁿ⁺¹)ᵏ(b+λⁿ)]
/// [(a+λⁿ−λⁿ⁺¹)ᵏb, (a+λⁿ)ᵏ(b+λⁿ⁺¹)]
/// [(a+λⁿ−λⁿ⁺¹)ᵏ(b+λⁿ−λⁿ⁺¹), (a+λⁿ)ᵏ(b+λⁿ)]
/// ```
pub fn decompose_fk<T: Scalar>(
    k: usize,
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &T,
) -> Result<PairDecomposition<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("exponent k must be at least 1".into()));
    }
    let (a, b, ln, ln1, _) = corners(i, j, lambda)?;
    let gap = ln.clone() - ln1.clone();
    let ak = pow(&a, k);
    let a_hi = pow(&(a.clone() + ln.clone()), k);
    let a_left_child_hi = pow(&(a.clone() + ln1.clone()), k);
    let a_right_child_lo = pow(&(a + gap.clone()), k);

    let u1 = ak.clone() * b.clone();
    let v1 = a_left_child_hi.clone() * (b.clone() + ln1.clone());
    let u2 = ak * (b.clone() + gap.clone());
    let v2 = a_left_child_hi * (b.clone() + ln.clone());
    let u3 = a_right_child_lo.clone() * b.clone();
    let v3 = a_hi.clone() * (b.clone() + ln1);
    let u4 = a_right_child_lo * (b.clone() + gap);
    let v4 = a_hi * (b + ln);
    Ok(PairDecomposition {
        parts: [
            Interval::new_unchecked(u1, v1),
            Interval::new_unchecked(u2, v2),
            Interval::new_unchecked(u3, v3),
            Interval::new_unchecked(u4, v4),
        ],
    })
}

/// `(Lₙ(a, b), Rₙ(a, b))` with `Lₙ = ab + a(1−λ)λⁿ` and `Rₙ = (a+λⁿ)(b+λⁿ⁺¹)`.
pub fn double_cover_window<T: Scalar>(n: usize, a: &T, b: &T, lambda: &T) -> Result<OpenInterval<T>> {
    if a > b {
        return Err(Error::OrderViolation {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let ln = pow(lambda, n);
    let one_minus = T::one() - lambda.clone();
    let lo = a.clone() * b.clone() + a.clone() * one_minus * ln.clone();
    let hi = (a.clone() + ln.clone()) * (b.clone() + ln * lambda.clone());
    Ok(OpenInterval { lo, hi })
}
