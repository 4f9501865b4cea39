use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the arithmetic, curve and certificate layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero is not allowed here")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("degenerate curve data: {0}")]
    Degenerate(String),
    #[error("model is not {p}-integral; rescale before reducing")]
    NotIntegral { p: u64 },
    #[error("bad reduction at {p}")]
    BadReduction { p: u64 },
    #[error("point ({x}, {y}) does not lie on the curve")]
    PointNotOnCurve { x: String, y: String },
    #[error("curve has no complex multiplication (j = {0})")]
    NotCm(String),
    #[error("no prime of good reduction below {bound}")]
    NoGoodPrime { bound: u64 },
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("unsupported prime {0} for this operation")]
    UnsupportedPrime(u64),
    #[error("d = {d} is smaller than r = {r} under a passing gate")]
    InternalContradiction { d: usize, r: usize },
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
