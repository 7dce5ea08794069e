use thiserror::Error;

/// Errors raised by the arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("no embedding from a degree-{from} field into a degree-{into} field")]
    NoEmbedding { from: usize, into: usize },

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("form is not exact: nonzero coefficient at exponent {0}")]
    NotExact(i64),

    #[error("form is not in B_{0}")]
    NotInBn(usize),

    #[error("Witt vector length mismatch ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("Witt vector entries live over different rings")]
    RingMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("the second symbol argument must be nonzero")]
    ZeroG,

    #[error("point violates patch relation {index}: residual has valuation {valuation:?}")]
    RelationViolation { index: usize, valuation: Option<i64> },

    #[error("expansion failure: {0}")]
    ExpansionFailure(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
