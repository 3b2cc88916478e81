use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("exact division failed at q^{0}")]
    NotDivisible(u32),

    #[error("non-integral coefficient in {0}")]
    NotIntegral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("missing Chern number for partition [{0}]")]
    MissingChernNumber(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("inconsistent table: {0}")]
    InconsistentTable(String),

    #[error("degree {degree} lies outside table window [{lo}, {hi}]")]
    OutOfWindow { degree: i64, lo: i64, hi: i64 },

    #[error("infeasible system: {0}")]
    Infeasible(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
