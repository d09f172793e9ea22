//! Exact verification of covering lemmas, critical thresholds and gap
//! phenomena for products `x·y` and `xᵏ·y` of points of the middle Cantor
//! set `C_λ`.
//!
//! Geometry (intervals, images, unions) is generic over [`Scalar`], so the
//! same code runs on `f32`, `f64` and exact [`Rational`]. Anything that ends
//! up in a certificate is computed with [`Rational`].

pub mod cantor;
pub mod catalog;
pub mod coverage;
pub mod error;
pub mod exactmath;
pub mod images;
pub mod interval;
pub mod scalar;
pub mod thresholds;
pub mod witness;

pub use cantor::{enumerate_rank, enumerate_rank_at, interval_of, Address, BasicInterval};
pub use coverage::{
    certify_circle_continuum, certify_fk_coverage, certify_st_continuum, find_gaps, image_union_fk, Certificate,
    GapReport, IntervalUnion,
};
pub use error::{Error, Result};
pub use exactmath::{isolate_root, parse_rational, sign_at, LambdaPoly, RootBracket, Sign};
pub use images::{decompose_f, decompose_fk, image_f, image_fk, PairDecomposition};
pub use interval::{Interval, OpenInterval};
pub use scalar::Scalar;
pub use thresholds::{lambda_k, named_threshold, r_k, ThresholdId};
pub use witness::{build_witness_tree, select_seed, verify_tree, WitnessNode, WitnessTree};

pub type Rational = num_rational::BigRational;

pub type RationalInterval = Interval<Rational>;
pub type F64Interval = Interval<f64>;
pub type F32Interval = Interval<f32>;

pub type RationalUnion = IntervalUnion<Rational>;
pub type F64Union = IntervalUnion<f64>;
