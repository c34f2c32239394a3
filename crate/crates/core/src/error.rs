use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected a positive integer, got 0")]
    Zero,

    #[error("{d} does not divide {n}")]
    NotADivisor { n: u64, d: u64 },

    #[error("root-of-unity sum for c_{n}({m}) is not within tolerance of an integer (re = {re}, im = {im})")]
    OracleTolerance { n: u64, m: u64, re: f64, im: f64 },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("quotient has non-integral coefficients")]
    NonIntegralQuotient,

    #[error("order {n} exceeds the limit of {limit} for {what}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("order {n} is below the minimum of {min} for {what}")]
    TooSmall { what: &'static str, n: usize, min: usize },

    #[error("graph is not circulant")]
    NotCirculant,

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("malformed edge list at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}
