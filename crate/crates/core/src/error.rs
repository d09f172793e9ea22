use thiserror::Error;

use crate::cantor::Address;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bracket [{lo}, {hi}] does not straddle a sign change")]
    InvalidBracket { lo: String, hi: String },

    #[error("lambda = {0} is outside (0, 1/2)")]
    LambdaOutOfRange(String),

    #[error("interval endpoints must be non-negative")]
    NegativeInput,

    #[error("basic intervals have different ranks ({0} vs {1})")]
    RankMismatch(usize, usize),

    #[error("left endpoint of the first interval exceeds the second ({a} > {b})")]
    OrderViolation { a: String, b: String },

    #[error("interval [{lo}, {hi}] is empty")]
    EmptyInterval { lo: String, hi: String },

    #[error("unknown threshold id: {0}")]
    UnknownId(String),

    #[error("lambda = {0} is not certified for the S_t witness construction")]
    NotCertified(String),

    #[error("t = {0} lies on a boundary of every catalog window")]
    NoWindow(String),

    #[error("t = {0} must lie strictly between 0 and 1")]
    TargetOutOfRange(String),

    #[error("no double cover found below rank {rank_limit} for pair ({address_i}, {address_j})")]
    ExpansionStalled {
        rank_limit: usize,
        address_i: Address,
        address_j: Address,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
