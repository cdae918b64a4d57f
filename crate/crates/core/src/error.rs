use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("pole at N = {0}")]
    Pole(BigRational),

    #[error("rank-deficient linear system: no pivot in column {0}")]
    RankDeficient(usize),

    #[error("inconsistent linear system: redundant row {0} does not vanish")]
    Inconsistent(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight mismatch: diagram has {diagram} boxes, class has weight {class}")]
    WeightMismatch { diagram: usize, class: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid sector: {0}")]
    InvalidSector(String),

    #[error("large-N limit diverges for the coefficient of {0}")]
    Divergent(String),

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("negative factorial argument {0}")]
    NegativeFactorial(i64),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
