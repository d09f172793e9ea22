use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cantor::BasicInterval;
use crate::error::{Error, Result};
use crate::exactmath::LambdaPoly;
use crate::scalar::{pow, Scalar};
use crate::thresholds::lambda_k_poly;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn evaluate<T: PartialOrd>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One exactly evaluated inequality `lhs relation rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison<T> {
    pub label: String,
    pub lhs: T,
    pub rhs: T,
    pub relation: Relation,
    pub holds: bool,
}

impl<T: Scalar> Comparison<T> {
    pub fn new(label: impl Into<String>, lhs: T, relation: Relation, rhs: T) -> Self {
        let holds = relation.evaluate(&lhs, &rhs);
        Self {
            label: label.into(),
            lhs,
            rhs,
            relation,
            holds,
        }
    }

    pub fn relabel(mut self, prefix: &str) -> Self {
        self.label = format!("{prefix}: {}", self.label);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport<T> {
    pub comparisons: Vec<Comparison<T>>,
}

impl<T: Scalar> ConditionReport<T> {
    pub fn holds(&self) -> bool {
        self.comparisons.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&Comparison<T>> {
        self.comparisons.iter().find(|c| !c.holds)
    }
}

fn check_lambda_generic<T: Scalar>(lambda: &T) -> Result<()> {
    let half = T::one() / (T::one() + T::one());
    if *lambda > T::zero() && *lambda < half {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda.to_string()))
    }
}

fn same_rank(i: &BasicInterval, j: &BasicInterval) -> Result<usize> {
    if i.rank() != j.rank() {
        return Err(Error::RankMismatch(i.rank(), j.rank()));
    }
    Ok(i.rank())
}

fn endpoints<T: Scalar>(i: &BasicInterval, j: &BasicInterval, lambda: &T) -> Result<(T, T, T)> {
    check_lambda_generic(lambda)?;
    let n = same_rank(i, j)?;
    Ok((i.left().eval(lambda), j.left().eval(lambda), pow(lambda, n)))
}

fn ordered<T: Scalar>(a: &T, b: &T) -> Result<()> {
    if a > b {
        return Err(Error::OrderViolation {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(())
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// The sandwich `(1−λ−λ²)(a+λⁿ)/λ ≤ b < b+λⁿ ≤ aλ/(1−2λ)` that makes the open
/// image `int f(I, J)` a double covering set. Requires `a ≤ b`.
pub fn double_cover_condition<T: Scalar>(
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &T,
) -> Result<ConditionReport<T>> {
    sandwich(i, j, lambda, "double cover")
}

/// Same sandwich as [`double_cover_condition`], applied to the circle catalog.
pub fn circle_pair_condition<T: Scalar>(
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &T,
) -> Result<ConditionReport<T>> {
    sandwich(i, j, lambda, "circle")
}

fn sandwich<T: Scalar>(i: &BasicInterval, j: &BasicInterval, lambda: &T, tag: &str) -> Result<ConditionReport<T>> {
    let (a, b, ln) = endpoints(i, j, lambda)?;
    ordered(&a, &b)?;
    let one = T::one();
    let lower =
        (one.clone() - lambda.clone() - lambda.clone() * lambda.clone()) * (a.clone() + ln.clone()) / lambda.clone();
    let upper = a * lambda.clone() / (one - two::<T>() * lambda.clone());
    let b_top = b.clone() + ln;
    Ok(ConditionReport {
        comparisons: vec![
            Comparison::new(
                format!("{tag} lower: (1-λ-λ^2)(a+λ^n)/λ <= b"),
                lower,
                Relation::Le,
                b.clone(),
            ),
            Comparison::new(format!("{tag} middle: b < b+λ^n"), b, Relation::Lt, b_top.clone()),
            Comparison::new(format!("{tag} upper: b+λ^n <= aλ/(1-2λ)"), b_top, Relation::Le, upper),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerConditionVariant {
    /// `(1−2λ)(a+kλⁿ)/(kλ) ≤ b ≤ a/(k(1−2λ))`: one refinement step is exact.
    Refinement,
    /// `(1−2λ)(a+kλⁿ)/(kλ) ≤ b < b+λⁿ ≤ a/(k(1−2λ))`: exact all the way down
    /// to the Cantor set.
    CantorLimit,
}

/// Pair condition for `f_k = xᵏy`; `k ≥ 2`.
pub fn power_pair_condition<T: Scalar>(
    k: usize,
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &T,
    variant: PowerConditionVariant,
) -> Result<ConditionReport<T>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("power condition needs k >= 2, got {k}")));
    }
    let (a, b, ln) = endpoints(i, j, lambda)?;
    let kk = T::from_i64(k as i64);
    let one_minus_two = T::one() - two::<T>() * lambda.clone();
    let lower = one_minus_two.clone() * (a.clone() + kk.clone() * ln.clone()) / (kk.clone() * lambda.clone());
    let upper = a / (kk * one_minus_two);
    let mut comparisons = vec![Comparison::new(
        "power lower: (1-2λ)(a+kλ^n)/(kλ) <= b",
        lower,
        Relation::Le,
        b.clone(),
    )];
    match variant {
        PowerConditionVariant::Refinement => {
            comparisons.push(Comparison::new("power upper: b <= a/(k(1-2λ))", b, Relation::Le, upper));
        }
        PowerConditionVariant::CantorLimit => {
            let b_top = b.clone() + ln;
            comparisons.push(Comparison::new(
                "power middle: b < b+λ^n",
                b,
                Relation::Lt,
                b_top.clone(),
            ));
            comparisons.push(Comparison::new(
                "power upper: b+λ^n <= a/(k(1-2λ))",
                b_top,
                Relation::Le,
                upper,
            ));
        }
    }
    Ok(ConditionReport { comparisons })
}

/// `Σ_{i=2}^{k} c_i (1−2λ) b < Σ_{i=1}^{k−1} c_i λ^{n+i}` with
/// `c_i = C(k, i) a^{k−i} λ^{ni}`, by direct summation.
pub fn binomial_tail_inequality<T: Scalar>(k: usize, n: usize, a: &T, b: &T, lambda: &T) -> Result<Comparison<T>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("binomial tail needs k >= 2, got {k}")));
    }
    let one_minus_two = T::one() - two::<T>() * lambda.clone();
    let mut binom = T::one();
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    for i in 1..=k {
        // C(k, i) = C(k, i−1)·(k−i+1)/i
        binom = binom * T::from_i64((k - i + 1) as i64) / T::from_i64(i as i64);
        let c = binom.clone() * pow(a, k - i) * pow(lambda, n * i);
        if i >= 2 {
            lhs = lhs + c.clone() * one_minus_two.clone() * b.clone();
        }
        if i < k {
            rhs = rhs + c * pow(lambda, n + i);
        }
    }
    Ok(Comparison::new(
        "binomial tail: Σ c_i(1-2λ)b < Σ c_i λ^(n+i)",
        lhs,
        Relation::Lt,
        rhs,
    ))
}

/// `λ² − 3λ + 1 ≤ 0` (or `< 0`), i.e. `λ ≥ (3−√5)/2`, decided by exact sign.
pub fn golden_side_condition(lambda: &Rational, strict: bool) -> Comparison<Rational> {
    let p = LambdaPoly::from_coeffs([1, -3, 1]);
    let relation = if strict { Relation::Lt } else { Relation::Le };
    Comparison::new(
        format!("λ^2-3λ+1 {} 0", relation.symbol()),
        p.eval(lambda),
        relation,
        Rational::from_integer(0.into()),
    )
}

/// `2λ − 1 < 0`.
pub fn below_half(lambda: &Rational) -> Comparison<Rational> {
    let p = LambdaPoly::from_coeffs([-1, 2]);
    Comparison::new(
        "2λ-1 < 0",
        p.eval(lambda),
        Relation::Lt,
        Rational::from_integer(0.into()),
    )
}

/// `(k−1)λᵏ + (2k+2)λ − (k+1) ≥ 0`, i.e. `λ ≥ λ_k`, without approximating λ_k.
pub fn lambda_k_side_condition(k: usize, lambda: &Rational) -> Comparison<Rational> {
    Comparison::new(
        format!("(k-1)λ^k+(2k+2)λ-(k+1) >= 0 [k={k}]"),
        lambda_k_poly(k).eval(lambda),
        Relation::Ge,
        Rational::from_integer(0.into()),
    )
}

/// Hypotheses under which the four-piece refinement of `f(I, J)` is exact:
/// `(3−√5)/2 ≤ λ < 1/2`, `a ≤ b` and `b ≤ (a+λⁿ⁺¹)/(1−2λ)`.
pub fn refinement_hypothesis(
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &Rational,
) -> Result<ConditionReport<Rational>> {
    let (a, b, ln) = endpoints(i, j, lambda)?;
    let bound = (&a + &ln * lambda) / (Rational::from_integer(1.into()) - lambda * Rational::from_integer(2.into()));
    Ok(ConditionReport {
        comparisons: vec![
            golden_side_condition(lambda, false),
            below_half(lambda),
            Comparison::new("a <= b", a, Relation::Le, b.clone()),
            Comparison::new("b <= (a+λ^(n+1))/(1-2λ)", b, Relation::Le, bound),
        ],
    })
}

/// Hypotheses giving the double-cover window `(Lₙ, Rₙ)`:
/// `(3−√5)/2 < λ < 1/2`, `a ≤ b` and `b ≤ aλ/(1−2λ)` (taken non-strict).
pub fn double_cover_hypothesis(
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &Rational,
) -> Result<ConditionReport<Rational>> {
    let (a, b, _) = endpoints(i, j, lambda)?;
    let bound = &a * lambda / (Rational::from_integer(1.into()) - lambda * Rational::from_integer(2.into()));
    Ok(ConditionReport {
        comparisons: vec![
            golden_side_condition(lambda, true),
            below_half(lambda),
            Comparison::new("a <= b", a, Relation::Le, b.clone()),
            Comparison::new("b <= aλ/(1-2λ)", b, Relation::Le, bound),
        ],
    })
}

/// Hypotheses for the exact refinement of `f_k(I, J)`: `λ_k ≤ λ < 1/2` plus
/// the [`PowerConditionVariant::Refinement`] pair condition.
pub fn power_refinement_hypothesis(
    k: usize,
    i: &BasicInterval,
    j: &BasicInterval,
    lambda: &Rational,
) -> Result<ConditionReport<Rational>> {
    let pair = power_pair_condition(k, i, j, lambda, PowerConditionVariant::Refinement)?;
    let mut comparisons = vec![lambda_k_side_condition(k, lambda), below_half(lambda)];
    comparisons.extend(pair.comparisons);
    Ok(ConditionReport { comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, ratio};

    fn b(addr: &str) -> BasicInterval {
        BasicInterval::parse(addr).unwrap()
    }

    fn dc(i: &str, j: &str, lambda: Rational) -> bool {
        double_cover_condition(&b(i), &b(j), &lambda).unwrap().holds()
    }

    #[test]
    fn double_cover_condition_examples() {
        // [1−λ³, 1] with itself, both sub-conditions sit below 0.4258
        assert!(dc("111", "111", ratio(43, 100)));
        // [1−λ+λ²−λ³, 1−λ+λ²] with itself needs λ ≳ 0.4302
        assert!(!dc("101", "101", ratio(42, 100)));
        // a = 0 makes the upper bound aλ/(1−2λ) vanish
        let zero = double_cover_condition(&b("000"), &b("000"), &ratio(45, 100)).unwrap();
        assert!(!zero.holds());
        assert!(!zero.comparisons[2].holds);
    }

    #[test]
    fn double_cover_condition_errors() {
        assert!(matches!(
            double_cover_condition(&b("11"), &b("10"), &ratio(45, 100)),
            Err(Error::OrderViolation { .. })
        ));
        assert!(matches!(
            double_cover_condition(&b("11"), &b("1"), &ratio(45, 100)),
            Err(Error::RankMismatch(2, 1))
        ));
        assert!(matches!(
            double_cover_condition(&b("1"), &b("1"), &ratio(1, 2)),
            Err(Error::LambdaOutOfRange(_))
        ));
    }

    #[test]
    fn middle_comparison_is_strict() {
        let r = double_cover_condition(&b("11"), &b("11"), &ratio(45, 100)).unwrap();
        let rel: Vec<_> = r.comparisons.iter().map(|c| c.relation).collect();
        assert_eq!(rel, vec![Relation::Le, Relation::Lt, Relation::Le]);
    }

    #[test]
    fn circle_pair_condition_examples() {
        let c = |i: &str, j: &str, l: Rational| circle_pair_condition(&b(i), &b(j), &l).unwrap().holds();
        assert!(c("11", "11", ratio(45, 100)));
        assert!(!c("10", "10", ratio(45, 100)));
        assert!(c("01", "10", ratio(44, 100)));
    }

    #[test]
    fn power_condition_examples() {
        let p = |k, l: Rational| {
            power_pair_condition(k, &b("1"), &b("1"), &l, PowerConditionVariant::CantorLimit)
                .unwrap()
                .holds()
        };
        assert!(p(2, ratio(47, 100)));
        // For a = b = 1−λ, n = 1 and k = 2 both sides reduce to λ ≥ 1/3.
        assert!(p(2, ratio(44, 100)));
        assert!(!p(2, ratio(33, 100)));
        assert!(p(3, ratio(48, 100)));
        assert!(power_pair_condition(1, &b("1"), &b("1"), &ratio(2, 5), PowerConditionVariant::Refinement).is_err());
    }

    #[test]
    fn binomial_tail_examples() {
        let l = ratio(47, 100);
        let a = int(1) - &l;
        assert!(binomial_tail_inequality(2, 1, &a, &a, &l).unwrap().holds);
        let l = ratio(48, 100);
        let a = int(1) - &l;
        assert!(binomial_tail_inequality(3, 1, &a, &a, &l).unwrap().holds);
        for k in 2..8 {
            assert!(
                binomial_tail_inequality(k, 2, &ratio(1, 2), &int(0), &ratio(2, 5))
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn binomial_tail_matches_brute_force_k2() {
        // k = 2: lhs = λ^{2n}(1−2λ)b, rhs = 2aλⁿ·λⁿ⁺¹
        let (l, a, bb, n) = (ratio(9, 20), ratio(3, 5), ratio(7, 10), 2usize);
        let c = binomial_tail_inequality(2, n, &a, &bb, &l).unwrap();
        let ln = pow(&l, n);
        assert_eq!(c.lhs, &ln * &ln * (int(1) - int(2) * &l) * &bb);
        assert_eq!(c.rhs, int(2) * &a * &ln * &ln * &l);
    }

    #[test]
    fn side_conditions() {
        assert!(golden_side_condition(&ratio(39, 100), true).holds);
        assert!(!golden_side_condition(&ratio(38, 100), false).holds);
        assert!(below_half(&ratio(49, 100)).holds);
        assert!(lambda_k_side_condition(2, &ratio(47, 100)).holds);
        assert!(!lambda_k_side_condition(2, &ratio(46, 100)).holds);
    }

    #[test]
    fn works_in_f64() {
        let r = double_cover_condition(&b("111"), &b("111"), &0.43_f64).unwrap();
        assert!(r.holds());
    }
}
