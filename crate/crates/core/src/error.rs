use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and group-theoretic kernels.
///
/// Boundary valuations are the classic silent-failure mode in p-adic
/// computations, so any test whose answer would depend on a digit beyond the
/// working precision raises [`Error::PrecisionInsufficient`] instead of
/// guessing.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("precision p^{have} too small: {what} needs digits up to p^{need}")]
    PrecisionInsufficient { have: i64, need: i64, what: String },

    #[error("matrix is not a member of {subgroup}: {reason}")]
    NotInSubgroup { subgroup: String, reason: String },

    #[error("invalid root index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series division by non-unit constant term")]
    NonUnitSeries,

    #[error("series did not terminate within truncation {truncation}: {detail}")]
    NonTerminatingSeries { truncation: i64, detail: String },

    #[error("enumeration budget {budget} exceeded in {what}")]
    BudgetExceeded { budget: usize, what: String },

    #[error("truncation instability in {what}: {detail}")]
    TruncationInstability { what: String, detail: String },

    #[error("missing table entry at {0:?}")]
    MissingTableEntry(Vec<i64>),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
