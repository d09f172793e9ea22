//! Critical values of λ, each isolated as the sign change of an explicit
//! integer polynomial.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::catalog::{chain_inequalities, circle_overlaps, sandwich_polys, CIRCLE_PAIRS, ST_PAIRS};
use crate::error::{Error, Result};
use crate::exactmath::rational::{half, int, ratio, to_f64};
use crate::exactmath::{isolate_root, sign_at, LambdaPoly, RootBracket, Sign};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdId {
    /// Root in (0, 1/2) of `(k−1)λᵏ + (2k+2)λ − (k+1)`.
    LambdaK(usize),
    /// Root in (0, 1) of `(1−λ)^{k+1} − λ`.
    RK(usize),
    Table1Row(usize),
    StepIICond(usize),
    ChainIneq(usize),
    CircleCond(usize),
    CircleOverlap(usize),
    TheoremConstant,
}

impl fmt::Display for ThresholdId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdId::LambdaK(k) => write!(f, "lambda_k({k})"),
            ThresholdId::RK(k) => write!(f, "r_k({k})"),
            ThresholdId::Table1Row(i) => write!(f, "table1_row({i})"),
            ThresholdId::StepIICond(i) => write!(f, "stepII_cond({i})"),
            ThresholdId::ChainIneq(i) => write!(f, "chain_ineq({i})"),
            ThresholdId::CircleCond(i) => write!(f, "circle_cond({i})"),
            ThresholdId::CircleOverlap(i) => write!(f, "circle_overlap({i})"),
            ThresholdId::TheoremConstant => write!(f, "theorem_constant"),
        }
    }
}

impl FromStr for ThresholdId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownId(s.to_string());
        let s = s.trim();
        if s == "theorem_constant" {
            return Ok(ThresholdId::TheoremConstant);
        }
        let (tag, rest) = s.split_once('(').ok_or_else(unknown)?;
        let n: usize = rest
            .strip_suffix(')')
            .ok_or_else(unknown)?
            .trim()
            .parse()
            .map_err(|_| unknown())?;
        let id = match tag {
            "lambda_k" => ThresholdId::LambdaK(n),
            "r_k" => ThresholdId::RK(n),
            "table1_row" => ThresholdId::Table1Row(n),
            "stepII_cond" => ThresholdId::StepIICond(n),
            "chain_ineq" => ThresholdId::ChainIneq(n),
            "circle_cond" => ThresholdId::CircleCond(n),
            "circle_overlap" => ThresholdId::CircleOverlap(n),
            _ => return Err(unknown()),
        };
        id.validate()?;
        Ok(id)
    }
}

impl Serialize for ThresholdId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl ThresholdId {
    fn validate(self) -> Result<()> {
        let ok = match self {
            ThresholdId::LambdaK(k) | ThresholdId::RK(k) => k >= 2,
            ThresholdId::Table1Row(i)
            | ThresholdId::StepIICond(i)
            | ThresholdId::CircleCond(i)
            | ThresholdId::CircleOverlap(i) => (1..=4).contains(&i),
            ThresholdId::ChainIneq(i) => (1..=5).contains(&i),
            ThresholdId::TheoremConstant => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownId(self.to_string()))
        }
    }

    /// The printed four- or three-decimal constant this threshold reproduces.
    pub fn reference_value(self) -> Option<&'static str> {
        let v = match self {
            ThresholdId::StepIICond(i) => ["0.4258", "0.3377", "0.4094", "0.3474"][i - 1],
            ThresholdId::Table1Row(i) => ["0.4274", "0.3993", "0.4302", "0.4076"][i - 1],
            ThresholdId::ChainIneq(i) => ["0.3377", "0.3290", "0.4198", "0.4084", "0.3391"][i - 1],
            ThresholdId::CircleCond(i) => ["0.446", "0.400", "0.459", "0.431"][i - 1],
            ThresholdId::CircleOverlap(i) => ["0.320", "0.350", "0.394", "0.436"][i - 1],
            ThresholdId::TheoremConstant => "0.4302",
            ThresholdId::LambdaK(_) | ThresholdId::RK(_) => return None,
        };
        Some(v)
    }
}

/// Every catalog entry, in table order.
pub fn catalog_ids() -> Vec<ThresholdId> {
    let mut ids = Vec::new();
    ids.extend((1..=4).map(ThresholdId::StepIICond));
    ids.extend((1..=4).map(ThresholdId::Table1Row));
    ids.extend((1..=5).map(ThresholdId::ChainIneq));
    ids.push(ThresholdId::TheoremConstant);
    ids.extend((1..=4).map(ThresholdId::CircleCond));
    ids.extend((1..=4).map(ThresholdId::CircleOverlap));
    ids
}

/// The S_t entries that bound the hyperbola certificate.
pub fn st_catalog_ids() -> Vec<ThresholdId> {
    let mut ids: Vec<_> = (1..=4).map(ThresholdId::StepIICond).collect();
    ids.extend((1..=4).map(ThresholdId::Table1Row));
    ids.extend((1..=5).map(ThresholdId::ChainIneq));
    ids
}

pub fn lambda_k_poly(k: usize) -> LambdaPoly {
    let k = k as i64;
    &LambdaPoly::monomial(k - 1, k as usize) + &LambdaPoly::from_coeffs([-(k + 1), 2 * k + 2])
}

/// `g_k(λ) = (1−λ)^{k+1} − λ`.
pub fn r_k_poly(k: usize) -> LambdaPoly {
    LambdaPoly::one_minus_lambda().pow(k + 1) - LambdaPoly::lambda()
}

/// The polynomial whose sign change marks the threshold, together with the
/// bracket it is isolated on. Conditions read `p(λ) ≥ 0` above the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdDefinition {
    pub id: ThresholdId,
    pub poly: LambdaPoly,
    pub search: (Rational, Rational),
    /// The other half of a pair condition when it is not the binding one.
    pub non_binding: Option<LambdaPoly>,
}

fn catalog_bracket() -> (Rational, Rational) {
    (ratio(3, 10), ratio(49, 100))
}

fn pair_definition(id: ThresholdId, i: &str, j: &str, width: &Rational) -> Result<ThresholdDefinition> {
    let (i, j) = (
        crate::cantor::BasicInterval::parse(i)?,
        crate::cantor::BasicInterval::parse(j)?,
    );
    let (lower, upper) = sandwich_polys(&i, &j);
    let range = catalog_bracket();
    let root_of = |p: &LambdaPoly| -> Option<RootBracket> {
        let b = RootBracket::new(p, range.0.clone(), range.1.clone()).ok()?;
        isolate_root(p, &b, width).ok()
    };
    // The binding half is the one with the larger root; a half that holds on
    // the whole search range never binds.
    let (poly, other) = match (root_of(&lower), root_of(&upper)) {
        (Some(l), Some(u)) if u.midpoint() > l.midpoint() => (upper, lower),
        (Some(_), _) => (lower, upper),
        (None, Some(_)) => (upper, lower),
        (None, None) => return Err(Error::UnknownId(id.to_string())),
    };
    Ok(ThresholdDefinition {
        id,
        poly,
        search: range,
        non_binding: Some(other),
    })
}

pub fn definition(id: ThresholdId, width: &Rational) -> Result<ThresholdDefinition> {
    id.validate()?;
    let simple = |poly: LambdaPoly, search| ThresholdDefinition {
        id,
        poly,
        search,
        non_binding: None,
    };
    Ok(match id {
        ThresholdId::LambdaK(k) => simple(lambda_k_poly(k), (int(0), half())),
        ThresholdId::RK(k) => simple(r_k_poly(k), (int(0), int(1))),
        ThresholdId::StepIICond(i) => {
            let pair = ST_PAIRS[(i - 1) / 2];
            let (a, b) = pair.intervals();
            let (lower, upper) = sandwich_polys(&a, &b);
            let (poly, other) = if i % 2 == 1 { (lower, upper) } else { (upper, lower) };
            ThresholdDefinition {
                id,
                poly,
                search: catalog_bracket(),
                non_binding: Some(other),
            }
        }
        ThresholdId::Table1Row(i) => {
            let pair = ST_PAIRS[i + 1];
            pair_definition(id, pair.i, pair.j, width)?
        }
        ThresholdId::ChainIneq(i) => simple(chain_inequalities()[i - 1].difference(), catalog_bracket()),
        ThresholdId::CircleCond(i) => {
            let pair = CIRCLE_PAIRS[i - 1];
            pair_definition(id, pair.i, pair.j, width)?
        }
        ThresholdId::CircleOverlap(i) => simple(circle_overlaps()[i - 1].difference(), catalog_bracket()),
        ThresholdId::TheoremConstant => {
            let mut best: Option<(ThresholdDefinition, RootBracket)> = None;
            for sub in st_catalog_ids() {
                let def = definition(sub, width)?;
                let b = isolate(&def, width)?;
                if best.as_ref().is_none_or(|(_, cur)| b.midpoint() > cur.midpoint()) {
                    best = Some((def, b));
                }
            }
            let (def, _) = best.expect("catalog is nonempty");
            ThresholdDefinition { id, ..def }
        }
    })
}

fn isolate(def: &ThresholdDefinition, width: &Rational) -> Result<RootBracket> {
    let start = RootBracket::new(&def.poly, def.search.0.clone(), def.search.1.clone())?;
    isolate_root(&def.poly, &start, width)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub id: ThresholdId,
    pub poly: LambdaPoly,
    pub bracket: RootBracket,
    pub reference: Option<&'static str>,
}

impl ThresholdReport {
    /// `|midpoint − printed value|`, exact.
    pub fn deviation(&self) -> Option<Rational> {
        let r = crate::exactmath::parse_rational(self.reference?).ok()?;
        Some((self.bracket.midpoint() - r).abs())
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.bracket.midpoint())
    }
}

#[derive(Serialize)]
struct ThresholdRow<'a> {
    id: ThresholdId,
    polynomial: String,
    bracket: &'a RootBracket,
    midpoint: String,
    reference: Option<&'static str>,
    deviation: Option<String>,
}

impl Serialize for ThresholdReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ThresholdRow {
            id: self.id,
            polynomial: self.poly.to_string(),
            bracket: &self.bracket,
            midpoint: self.bracket.display_midpoint(),
            reference: self.reference,
            deviation: self.deviation().map(|d| crate::exactmath::to_decimal(&d, 6)),
        }
        .serialize(s)
    }
}

pub fn named_threshold(id: ThresholdId, width: &Rational) -> Result<ThresholdReport> {
    let def = definition(id, width)?;
    let bracket = isolate(&def, width)?;
    Ok(ThresholdReport {
        id,
        poly: def.poly,
        bracket,
        reference: id.reference_value(),
    })
}

/// The whole catalog, isolated in parallel.
pub fn threshold_table(width: &Rational) -> Result<Vec<ThresholdReport>> {
    catalog_ids()
        .into_par_iter()
        .map(|id| named_threshold(id, width))
        .collect()
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

pub fn lambda_k(k: usize, width: &Rational) -> Result<RootBracket> {
    check_k(k)?;
    Ok(named_threshold(ThresholdId::LambdaK(k), width)?.bracket)
}

pub fn r_k(k: usize, width: &Rational) -> Result<RootBracket> {
    check_k(k)?;
    Ok(named_threshold(ThresholdId::RK(k), width)?.bracket)
}

/// `x_k = (k−1)/(2k−1)`.
pub fn x_k(k: usize) -> Rational {
    ratio(k as i64 - 1, 2 * k as i64 - 1)
}

/// `h_k(λ) = (k−1)λᵏ/(k+1) + 2λ − 1`.
pub fn h_k(k: usize, lambda: &Rational) -> Rational {
    let k_i = k as i64;
    ratio(k_i - 1, k_i + 1) * crate::scalar::pow(lambda, k) + int(2) * lambda - int(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkRow {
    pub k: usize,
    #[serde(with = "crate::exactmath::rational::fraction")]
    pub x_k: Rational,
    #[serde(with = "crate::exactmath::rational::fraction")]
    pub h_k_at_x_k: Rational,
    /// Sign of the λ_k polynomial at `x_k`; negative means `x_k < λ_k`.
    pub lambda_poly_sign: Sign,
}

pub fn hk_xk_rows(k_max: usize) -> Vec<HkRow> {
    (2..=k_max)
        .map(|k| {
            let x = x_k(k);
            HkRow {
                k,
                h_k_at_x_k: h_k(k, &x),
                lambda_poly_sign: sign_at(&lambda_k_poly(k), &x),
                x_k: x,
            }
        })
        .collect()
}

/// `h_k(x_k) < 0` for every `k` in `2..=k_max`, exactly.
pub fn check_hk_xk(k_max: usize) -> Result<bool> {
    check_k(k_max)?;
    Ok(hk_xk_rows(k_max).iter().all(|r| r.h_k_at_x_k.is_negative()))
}

/// `x_k < λ_k` for every `k` in `2..=k_max`, by the sign of the λ_k polynomial.
pub fn check_xk_below_lambda_k(k_max: usize) -> Result<bool> {
    check_k(k_max)?;
    Ok(hk_xk_rows(k_max).iter().all(|r| r.lambda_poly_sign == Sign::Negative))
}

/// λ₂ < λ₃ < … < λ_{k_max} < 1/2, with brackets refined until consecutive
/// ones are disjoint.
pub fn lambda_k_brackets_monotone(k_max: usize) -> Result<Vec<RootBracket>> {
    if k_max < 3 {
        return Err(Error::InvalidArgument(format!("k_max must be at least 3, got {k_max}")));
    }
    // 1/2 − λ_k is of order 2^{−k−1}; start a few bits finer than the gaps.
    let width_for = |k: usize, extra: usize| Rational::new(1.into(), num_bigint::BigInt::from(1) << (k + 4 + extra));
    let mut brackets: Vec<RootBracket> = (2..=k_max)
        .into_par_iter()
        .map(|k| lambda_k(k, &width_for(k, 0)))
        .collect::<Result<_>>()?;
    for idx in 0..brackets.len() - 1 {
        let mut extra = 0;
        while !brackets[idx].is_below(&brackets[idx + 1]) {
            extra += 4;
            if extra > 256 {
                return Err(Error::InvalidArgument(format!(
                    "λ brackets for k = {} and {} do not separate",
                    idx + 2,
                    idx + 3
                )));
            }
            brackets[idx] = lambda_k(idx + 2, &width_for(idx + 2, extra))?;
            brackets[idx + 1] = lambda_k(idx + 3, &width_for(idx + 3, extra))?;
        }
    }
    Ok(brackets)
}

pub fn check_lambda_k_monotone(k_max: usize) -> Result<bool> {
    let brackets = lambda_k_brackets_monotone(k_max);
    let brackets = match brackets {
        Ok(b) => b,
        Err(Error::InvalidArgument(msg)) if msg.contains("do not separate") => return Ok(false),
        Err(e) => return Err(e),
    };
    let increasing = brackets.windows(2).all(|w| w[0].is_below(&w[1]));
    let below_half = (2..=k_max).all(|k| sign_at(&lambda_k_poly(k), &half()) == Sign::Positive)
        && brackets.iter().all(|b| b.hi < half());
    Ok(increasing && below_half)
}

/// Distance of a bracket's midpoint from the printed value, for reports.
pub fn is_within(report: &ThresholdReport, tolerance: &Rational) -> bool {
    report.deviation().is_some_and(|d| &d <= tolerance)
}
