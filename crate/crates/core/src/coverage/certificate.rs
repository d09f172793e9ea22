use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{
    chain_inequalities, circle_overlaps, st_scaling_inequality, st_window_lower, CatalogPair, CIRCLE_PAIRS, ST_PAIRS,
};
use crate::error::{Error, Result};
use crate::exactmath::rational::{fraction, int};
use crate::exactmath::{to_decimal, to_fraction_string, LambdaPoly};
use crate::images::{
    below_half, circle_pair_condition, double_cover_condition, lambda_k_side_condition, Comparison, Relation,
};
use crate::interval::OpenInterval;
use crate::scalar::pow;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    StContinuum,
    FkCoverage,
    CircleContinuum,
}

/// One exact inequality as recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    #[serde(with = "fraction")]
    pub lhs: Rational,
    #[serde(with = "fraction")]
    pub rhs: Rational,
    pub relation: Relation,
    pub holds: bool,
}

impl From<Comparison<Rational>> for CheckRecord {
    fn from(c: Comparison<Rational>) -> Self {
        Self {
            label: c.label,
            lhs: c.lhs,
            rhs: c.rhs,
            relation: c.relation,
            holds: c.holds,
        }
    }
}

impl CheckRecord {
    /// Re-evaluates the relation instead of trusting `holds`.
    pub fn recheck(&self) -> bool {
        self.relation.evaluate(&self.lhs, &self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub statement: String,
    pub range: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<OpenInterval<Rational>>,
}

/// Checked hypotheses plus the conclusion they license. The conclusion is
/// present exactly when every check holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    #[serde(with = "fraction")]
    pub lambda: Rational,
    pub k: Option<usize>,
    pub checks: Vec<CheckRecord>,
    pub conclusion: Option<Conclusion>,
}

impl Certificate {
    fn assemble(
        kind: CertificateKind,
        lambda: &Rational,
        k: Option<usize>,
        checks: Vec<CheckRecord>,
        conclusion: Conclusion,
    ) -> Self {
        let passed = checks.iter().all(|c| c.holds);
        Self {
            kind,
            lambda: lambda.clone(),
            k,
            checks,
            conclusion: passed.then_some(conclusion),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.conclusion.is_some()
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| !c.holds)
    }

    /// Recomputes every relation and the conclusion-iff-all-pass invariant.
    /// Catches a hand-edited JSON file.
    pub fn is_consistent(&self) -> bool {
        let all = self.checks.iter().all(|c| c.recheck() == c.holds);
        all && self.conclusion.is_some() == self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            CertificateKind::StContinuum => "st_continuum",
            CertificateKind::FkCoverage => "fk_coverage",
            CertificateKind::CircleContinuum => "circle_continuum",
        };
        let _ = write!(
            out,
            "certificate {kind}  λ = {} (≈ {})",
            to_fraction_string(&self.lambda),
            to_decimal(&self.lambda, 6)
        );
        if let Some(k) = self.k {
            let _ = write!(out, "  k = {k}");
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {}: {} {} {}",
                if c.holds { "pass" } else { "FAIL" },
                c.label,
                to_decimal(&c.lhs, 8),
                c.relation,
                to_decimal(&c.rhs, 8),
            );
        }
        match (&self.conclusion, self.first_failure()) {
            (Some(c), _) => {
                let _ = writeln!(out, "certified: {} (range {})", c.statement, c.range);
                if let Some(w) = &c.window {
                    let _ = writeln!(
                        out,
                        "  window: ({}, {}) ≈ ({}, {})",
                        to_fraction_string(&w.lo),
                        to_fraction_string(&w.hi),
                        to_decimal(&w.lo, 6),
                        to_decimal(&w.hi, 6)
                    );
                }
            }
            (None, Some(f)) => {
                let _ = writeln!(out, "not certified: first failing check is {}", f.label);
            }
            (None, None) => {
                let _ = writeln!(out, "not certified");
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,lhs,relation,rhs,holds\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "\"{}\",{},{},{},{}",
                c.label.replace('"', "\"\""),
                to_fraction_string(&c.lhs),
                c.relation,
                to_fraction_string(&c.rhs),
                c.holds
            );
        }
        out
    }
}

fn zero() -> Rational {
    int(0)
}

/// `λ > 0` and `2λ − 1 < 0`; when either fails the pair conditions are not
/// evaluated.
fn range_checks(lambda: &Rational) -> (Vec<CheckRecord>, bool) {
    let checks: Vec<CheckRecord> = vec![
        Comparison::new("λ > 0", lambda.clone(), Relation::Gt, zero()).into(),
        below_half(lambda).into(),
    ];
    let ok = checks.iter().all(|c| c.holds);
    (checks, ok)
}

fn pair_checks<F>(pairs: &[CatalogPair], lambda: &Rational, condition: F) -> Vec<CheckRecord>
where
    F: Fn(
        &crate::cantor::BasicInterval,
        &crate::cantor::BasicInterval,
        &Rational,
    ) -> Result<crate::images::ConditionReport<Rational>>,
{
    pairs
        .iter()
        .flat_map(|pair| {
            let (i, j) = pair.intervals();
            let report = condition(&i, &j, lambda).expect("catalog pairs are ordered and of equal rank");
            let prefix = format!("{} [{}, {}]", pair.name, pair.i, pair.j);
            report.comparisons.into_iter().map(move |c| {
                let mut c = c;
                c.label = format!("{prefix} {}", c.label);
                CheckRecord::from(c)
            })
        })
        .collect()
}

fn poly_check(
    name: &str,
    lhs: &LambdaPoly,
    relation: Relation,
    rhs: &LambdaPoly,
    lambda: &Rational,
    text: &str,
) -> CheckRecord {
    Comparison::new(format!("{name}: {text}"), lhs.eval(lambda), relation, rhs.eval(lambda)).into()
}

/// Six catalog pairs satisfy the double-cover sandwich, their images chain
/// into the window `((1−λ)(1−λ+λ²−λ³), 1)`, and the window overlaps its
/// λ-scaled copy. Together these give continuum many solutions of `xy = t`
/// for every `t ∈ (0, 1)`.
pub fn certify_st_continuum(lambda: &Rational) -> Certificate {
    let (mut checks, in_range) = range_checks(lambda);
    if in_range {
        checks.extend(pair_checks(&ST_PAIRS, lambda, double_cover_condition));
        let texts = [
            "1-λ^2+λ^3 > (1-λ^3)^2",
            "(1-λ^2+λ^3)^2 > (1-λ^2)(1-λ^3)",
            "(1-λ+λ^2)(1-λ^2+λ^3) > (1-λ^2)^2",
            "(1-λ+λ^2)^2 > (1-λ+λ^2-λ^3)(1-λ^2)",
            "(1-λ+λ^3)(1-λ+λ^2) > (1-λ+λ^2-λ^3)^2",
        ];
        for (ineq, text) in chain_inequalities().iter().zip(texts) {
            checks.push(poly_check(
                &ineq.name,
                &ineq.lhs,
                ineq.relation,
                &ineq.rhs,
                lambda,
                text,
            ));
        }
        let s = st_scaling_inequality();
        checks.push(poly_check(
            &s.name,
            &s.lhs,
            s.relation,
            &s.rhs,
            lambda,
            "λ > (1-λ)(1-λ+λ^2-λ^3)",
        ));
    }
    let window = OpenInterval {
        lo: st_window_lower().eval(lambda),
        hi: int(1),
    };
    Certificate::assemble(
        CertificateKind::StContinuum,
        lambda,
        None,
        checks,
        Conclusion {
            statement: "S_t = {(x, y) in C_λ × C_λ : xy = t} has the cardinality of the continuum for every t in (0, 1); the window is carried to all of (0, 1) by t -> λt".into(),
            range: "(0, 1)".into(),
            window: Some(window),
        },
    )
}

/// `λ ≥ λ_k` by exact sign, the two seed inequalities for `a = b = 1−λ`,
/// and `(1−λ)^{k+1} < λ`. Certifies `f_k(C_λ, C_λ) = [0, 1]`.
pub fn certify_fk_coverage(k: usize, lambda: &Rational) -> Result<Certificate> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("f_k coverage needs k >= 2, got {k}")));
    }
    let (mut checks, in_range) = range_checks(lambda);
    if in_range {
        let one = int(1);
        let kk = int(k as i64);
        let one_minus = &one - lambda;
        let one_minus_two = &one - int(2) * lambda;
        checks.push(lambda_k_side_condition(k, lambda).into());
        checks.push(
            Comparison::new(
                "seed lower: (1-2λ)(1+(k-1)λ)/(kλ) <= 1-λ",
                &one_minus_two * (&one + (&kk - &one) * lambda) / (&kk * lambda),
                Relation::Le,
                one_minus.clone(),
            )
            .into(),
        );
        checks.push(
            Comparison::new(
                "seed upper: 1 <= (1-λ)/(k(1-2λ))",
                one.clone(),
                Relation::Le,
                &one_minus / (&kk * &one_minus_two),
            )
            .into(),
        );
        checks.push(
            Comparison::new(
                "tail overlap: (1-λ)^(k+1) < λ",
                pow(&one_minus, k + 1),
                Relation::Lt,
                lambda.clone(),
            )
            .into(),
        );
    }
    Ok(Certificate::assemble(
        CertificateKind::FkCoverage,
        lambda,
        Some(k),
        checks,
        Conclusion {
            statement: format!("f_{k}(C_λ, C_λ) = [0, 1]"),
            range: "[0, 1]".into(),
            window: None,
        },
    ))
}

/// Four rank-2 pairs satisfy the sandwich condition, their squared-norm
/// images overlap, and the scaling step closes. Certifies continuum many
/// points of `C_λ × C_λ` on every circle `x² + y² = r`, `r ∈ (0, 2)`.
pub fn certify_circle_continuum(lambda: &Rational) -> Certificate {
    let (mut checks, in_range) = range_checks(lambda);
    if in_range {
        checks.extend(pair_checks(&CIRCLE_PAIRS, lambda, circle_pair_condition));
        let texts = [
            "(1-λ+λ^2)^2 + 1 > 2(1-λ^2)^2",
            "2(1-λ+λ^2)^2 > (1-λ)^2 + (1-λ^2)^2",
            "λ^2 + (1-λ+λ^2)^2 > 2(1-λ)^2",
            "2λ^2 > (λ-λ^2)^2 + (1-λ)^2",
        ];
        for (ineq, text) in circle_overlaps().iter().zip(texts) {
            checks.push(poly_check(
                &ineq.name,
                &ineq.lhs,
                ineq.relation,
                &ineq.rhs,
                lambda,
                text,
            ));
        }
    }
    Certificate::assemble(
        CertificateKind::CircleContinuum,
        lambda,
        None,
        checks,
        Conclusion {
            statement: "{x^2 + y^2 = r} ∩ (C_λ × C_λ) has the cardinality of the continuum for every r in (0, 2)"
                .into(),
            range: "(0, 2)".into(),
            window: None,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::ratio;

    #[test]
    fn st_examples() {
        assert!(certify_st_continuum(&ratio(4302, 10000)).is_certified());
        assert!(certify_st_continuum(&ratio(46, 100)).is_certified());
        let c = certify_st_continuum(&ratio(42, 100));
        assert!(!c.is_certified());
        // The first Step II pair (threshold ≈ 0.4258) fails before any table row.
        assert!(c.first_failure().unwrap().label.starts_with("stepII_pair(1)"));
        assert!(c
            .checks
            .iter()
            .any(|x| !x.holds && x.label.starts_with("table1_row(3)")));
        let c = certify_st_continuum(&ratio(43, 100));
        assert!(c.first_failure().unwrap().label.starts_with("table1_row(3)"));
        let c = certify_st_continuum(&ratio(1, 2));
        assert_eq!(c.first_failure().unwrap().label, "2λ-1 < 0");
    }

    #[test]
    fn fk_examples() {
        assert!(certify_fk_coverage(2, &ratio(47, 100)).unwrap().is_certified());
        let c = certify_fk_coverage(2, &ratio(45, 100)).unwrap();
        assert!(c.first_failure().unwrap().label.starts_with("(k-1)λ^k"));
        assert!(!certify_fk_coverage(4, &ratio(1, 3)).unwrap().is_certified());
        assert!(certify_fk_coverage(1, &ratio(45, 100)).is_err());
    }

    #[test]
    fn circle_examples() {
        assert!(certify_circle_continuum(&ratio(46, 100)).is_certified());
        let c = certify_circle_continuum(&ratio(45, 100));
        assert!(c.first_failure().unwrap().label.starts_with("circle_pair(3)"));
        let c = certify_circle_continuum(&ratio(44, 100));
        assert!(c.first_failure().unwrap().label.starts_with("circle_pair(1)"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for c in [
            certify_st_continuum(&ratio(4302, 10000)),
            certify_st_continuum(&ratio(42, 100)),
            certify_fk_coverage(3, &ratio(48, 100)).unwrap(),
            certify_circle_continuum(&ratio(45, 100)),
        ] {
            let json = c.to_json();
            let back = Certificate::from_json(&json).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), json);
            assert!(back.is_consistent());
        }
    }

    #[test]
    fn schema_keys() {
        let v: serde_json::Value =
            serde_json::from_str(&certify_fk_coverage(2, &ratio(47, 100)).unwrap().to_json()).unwrap();
        assert_eq!(v["kind"], "fk_coverage");
        assert_eq!(v["lambda"], "47/100");
        assert_eq!(v["k"], 2);
        assert_eq!(v["conclusion"]["range"], "[0, 1]");
        let first = &v["checks"][0];
        for key in ["label", "lhs", "rhs", "relation", "holds"] {
            assert!(first.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn tampered_certificate_is_inconsistent() {
        let mut c = certify_circle_continuum(&ratio(45, 100));
        c.checks[5].holds = !c.checks[5].holds;
        assert!(!c.is_consistent());
    }
}
