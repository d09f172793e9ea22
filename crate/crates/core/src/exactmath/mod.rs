//! Exact arithmetic: rationals, polynomials in λ, signs and root brackets.

pub mod poly;
pub mod rational;
pub mod roots;

pub use poly::LambdaPoly;
pub use rational::{parse_rational, to_decimal, to_fraction_string};
pub use roots::{isolate_root, sign_at, RootBracket, Sign};
