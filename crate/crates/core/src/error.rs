use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("insufficient precision: need exponent {needed}, series trusted below {trunc}")]
    Precision { needed: i64, trunc: i64 },

    #[error("division by a series with no trusted nonzero coefficient")]
    ZeroSeries,

    #[error("division by the zero polynomial")]
    ZeroDivision,

    #[error("partial fraction decomposition failed: {0}")]
    Decomposition(String),

    #[error("cannot parse rational {0:?}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("outside budget: {0}")]
    Budget(String),

    #[error("internal check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
