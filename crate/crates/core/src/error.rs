use thiserror::Error;

/// Errors raised by the exact function-space machinery.
///
/// Undefined extended-real sums are *not* errors; they surface as `None`
/// from the checked arithmetic in [`crate::extreal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one point")]
    EmptyCarrier,
    #[error("duplicate carrier point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown carrier point `{0}`")]
    UnknownPoint(String),
    #[error("no value given for carrier point `{0}`")]
    MissingValue(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("scaling by zero is undefined on the extended reals")]
    ZeroScale,
    #[error("function is not real-valued")]
    NotRealValued,
    #[error("pointwise sum is undefined at `{0}`")]
    UndefinedSum(String),
    #[error("cannot parse `{0}` as an extended real")]
    Parse(String),
    #[error("grid points must be strictly increasing")]
    UnsortedGrid,
    #[error("the fast transform needs slopes sorted ascending")]
    UnsortedSlopes,
    #[error("circle grid needs at least 3 samples, got {0}")]
    CircleTooSmall(usize),
    #[error("point index {index} out of range for carrier of size {len}")]
    PointOutOfRange { index: usize, len: usize },
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
