use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
///
/// Variants fall into three classes (see [`ErrorClass`]): malformed input,
/// violated mathematical preconditions, and exhausted resource caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse `{0}` as a fraction")]
    ParseFraction(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("matrix is singular")]
    Singular,

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),

    #[error("invalid root datum: {}", .0.join("; "))]
    InvalidDatum(Vec<String>),

    #[error("invalid theta datum: {0}")]
    InvalidTheta(String),

    #[error("quadratic form is not Weyl invariant: generator s{generator} moves the pair (e{j}, e{k})")]
    NotWeylInvariant { generator: usize, j: usize, k: usize },

    #[error("restriction condition fails: b(alpha{coroot}, e{basis}) = {lhs} but <alpha{coroot}^, e{basis}> q(alpha{coroot}) = {rhs}")]
    RestrictionFailed {
        coroot: usize,
        basis: usize,
        lhs: String,
        rhs: String,
    },

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },

    #[error("cohomological degree {0} outside 1..=4")]
    InvalidDegree(u32),

    #[error("complete curve required")]
    IncompleteCurve,

    #[error("modulus must be positive")]
    NonPositiveModulus,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidInput,
    Precondition,
    Resource,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ZeroDenominator
            | Error::ParseFraction(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::UnknownGroup(_)
            | Error::MalformedSpec(_)
            | Error::InvalidDatum(_)
            | Error::InvalidTheta(_)
            | Error::InvalidDegree(_)
            | Error::NonPositiveModulus => ErrorClass::InvalidInput,
            Error::DependentRows
            | Error::Singular
            | Error::NotWeylInvariant { .. }
            | Error::RestrictionFailed { .. }
            | Error::IncompleteCurve => ErrorClass::Precondition,
            Error::CapExceeded { .. } => ErrorClass::Resource,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
