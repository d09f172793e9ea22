//! The fixed witness catalogs: six pairs of rank-3 basic intervals whose
//! images tile the window `((1−λ)(1−λ+λ²−λ³), 1)` for the hyperbola problem,
//! four rank-2 pairs for the circle problem, and the polynomial inequalities
//! that glue neighbouring images together.

use crate::cantor::BasicInterval;
use crate::exactmath::LambdaPoly;
use crate::images::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogPair {
    pub name: &'static str,
    pub i: &'static str,
    pub j: &'static str,
}

impl CatalogPair {
    pub fn intervals(&self) -> (BasicInterval, BasicInterval) {
        (
            BasicInterval::parse(self.i).expect("catalog address"),
            BasicInterval::parse(self.j).expect("catalog address"),
        )
    }
}

/// Rank-3 addresses: `111` = [1−λ³, 1], `110` = [1−λ², 1−λ²+λ³],
/// `101` = [1−λ+λ²−λ³, 1−λ+λ²], `100` = [1−λ, 1−λ+λ³].
pub const ST_PAIRS: [CatalogPair; 6] = [
    CatalogPair {
        name: "stepII_pair(1)",
        i: "111",
        j: "111",
    },
    CatalogPair {
        name: "stepII_pair(2)",
        i: "110",
        j: "111",
    },
    CatalogPair {
        name: "table1_row(1)",
        i: "110",
        j: "110",
    },
    CatalogPair {
        name: "table1_row(2)",
        i: "101",
        j: "110",
    },
    CatalogPair {
        name: "table1_row(3)",
        i: "101",
        j: "101",
    },
    CatalogPair {
        name: "table1_row(4)",
        i: "100",
        j: "101",
    },
];

/// Rank-2 addresses: `11` = [1−λ², 1], `10` = [1−λ, 1−λ+λ²], `01` = [λ−λ², λ].
pub const CIRCLE_PAIRS: [CatalogPair; 4] = [
    CatalogPair {
        name: "circle_pair(1)",
        i: "11",
        j: "11",
    },
    CatalogPair {
        name: "circle_pair(2)",
        i: "10",
        j: "11",
    },
    CatalogPair {
        name: "circle_pair(3)",
        i: "10",
        j: "10",
    },
    CatalogPair {
        name: "circle_pair(4)",
        i: "01",
        j: "10",
    },
];

/// The double-cover sandwich for a pair, multiplied through by `λ > 0` and
/// `1 − 2λ > 0` so both halves read `p(λ) ≥ 0`:
///
/// * lower: `λb − (1−λ−λ²)(a+λⁿ)`
/// * upper: `aλ − (1−2λ)(b+λⁿ)`
pub fn sandwich_polys(i: &BasicInterval, j: &BasicInterval) -> (LambdaPoly, LambdaPoly) {
    let lam = LambdaPoly::lambda();
    let ln = i.length();
    let a = i.left();
    let b = j.left();
    let lower = &lam * b - LambdaPoly::from_coeffs([1, -1, -1]) * (a + &ln);
    let upper = a * &lam - LambdaPoly::from_coeffs([1, -2]) * (b + &ln);
    (lower, upper)
}

/// `lhs relation rhs` between two polynomials in λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyInequality {
    pub name: String,
    pub lhs: LambdaPoly,
    pub rhs: LambdaPoly,
    pub relation: Relation,
}

impl PolyInequality {
    fn gt(name: impl Into<String>, lhs: LambdaPoly, rhs: LambdaPoly) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            relation: Relation::Gt,
        }
    }

    /// `lhs − rhs`, positive exactly where a `>` inequality holds.
    pub fn difference(&self) -> LambdaPoly {
        &self.lhs - &self.rhs
    }
}

fn p(coeffs: &[i64]) -> LambdaPoly {
    LambdaPoly::from_coeffs(coeffs.iter().copied())
}

/// Consecutive images of the six S_t pairs overlap.
pub fn chain_inequalities() -> Vec<PolyInequality> {
    let one_m_l3 = p(&[1, 0, 0, -1]); // 1 − λ³
    let one_m_l2_l3 = p(&[1, 0, -1, 1]); // 1 − λ² + λ³
    let one_m_l2 = p(&[1, 0, -1]); // 1 − λ²
    let one_m_l_l2 = p(&[1, -1, 1]); // 1 − λ + λ²
    let one_m_l_l2_l3 = p(&[1, -1, 1, -1]); // 1 − λ + λ² − λ³
    let one_m_l_l3 = p(&[1, -1, 0, 1]); // 1 − λ + λ³
    vec![
        PolyInequality::gt("chain_ineq(1)", one_m_l2_l3.clone(), one_m_l3.pow(2)),
        PolyInequality::gt("chain_ineq(2)", one_m_l2_l3.pow(2), &one_m_l2 * &one_m_l3),
        PolyInequality::gt("chain_ineq(3)", &one_m_l_l2 * &one_m_l2_l3, one_m_l2.pow(2)),
        PolyInequality::gt("chain_ineq(4)", one_m_l_l2.pow(2), &one_m_l_l2_l3 * &one_m_l2),
        PolyInequality::gt("chain_ineq(5)", &one_m_l_l3 * &one_m_l_l2, one_m_l_l2_l3.pow(2)),
    ]
}

/// Lower end of the S_t window, `(1−λ)(1−λ+λ²−λ³)`.
pub fn st_window_lower() -> LambdaPoly {
    LambdaPoly::one_minus_lambda() * p(&[1, -1, 1, -1])
}

/// `λ > (1−λ)(1−λ+λ²−λ³)`: the window and its λ-scaled copy overlap.
pub fn st_scaling_inequality() -> PolyInequality {
    PolyInequality::gt("window_scaling", LambdaPoly::lambda(), st_window_lower())
}

/// The three overlap inequalities of the circle catalog, followed by the
/// scaling condition `(λ−λ²)² + (1−λ)² < 2λ²` written as `2λ² > …`.
pub fn circle_overlaps() -> Vec<PolyInequality> {
    let one_m_l_l2 = p(&[1, -1, 1]);
    let one_m_l2 = p(&[1, 0, -1]);
    let one_m_l = LambdaPoly::one_minus_lambda();
    let l2 = LambdaPoly::monomial(1, 2);
    vec![
        PolyInequality::gt(
            "circle_overlap(1)",
            one_m_l_l2.pow(2) + LambdaPoly::one(),
            one_m_l2.pow(2).scale(2),
        ),
        PolyInequality::gt(
            "circle_overlap(2)",
            one_m_l_l2.pow(2).scale(2),
            one_m_l.pow(2) + one_m_l2.pow(2),
        ),
        PolyInequality::gt("circle_overlap(3)", &l2 + &one_m_l_l2.pow(2), one_m_l.pow(2).scale(2)),
        PolyInequality::gt("circle_overlap(4)", l2.scale(2), p(&[0, 1, -1]).pow(2) + one_m_l.pow(2)),
    ]
}
