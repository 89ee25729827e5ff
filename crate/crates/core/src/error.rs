use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("block shapes differ: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("invalid block shape {0:?}: need at least one block and every size >= 1")]
    InvalidShape(Vec<usize>),
    #[error("product of two infinitesimal parts would need an eps^2 term")]
    SecondOrderEps,
    #[error("zonotope directions must be rational")]
    EpsDirection,
    #[error("segment {0} has lo > hi or a zero direction")]
    InvalidSegment(usize),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("mu = {mu} is not generic for d = {d}: 2*mu*l is an integer for some 1 <= l <= d")]
    NonGenericMu { mu: String, d: usize },
    #[error("fiber flags must lie in {{0, 1}}, got {0:?}")]
    InvalidFlags(Vec<u32>),
    #[error("invalid fiber configuration: {0}")]
    InvalidConfig(String),
    #[error("split is incompatible with the configuration: {0}")]
    IncompatibleSplit(String),
    #[error("beta^2 + K.beta = {0} is odd")]
    ParityViolation(i64),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
