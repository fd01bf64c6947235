//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, arithmetic, and verification routines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QciError {
    #[error("scalar descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root is only defined for 1 and -1, got {0}")]
    UnsupportedSqrtArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} exceeds the supported range (p < 2^31)")]
    ModulusTooLarge(u64),

    #[error("cannot parse field descriptor {0:?} (expected Q, Q(i), or Fp:<prime>)")]
    ParseDescriptor(String),

    #[error("cannot parse scalar literal {input:?} over {field}: {reason}")]
    ParseScalar {
        input: String,
        field: String,
        reason: String,
    },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different algebra specs")]
    SpecMismatch,

    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),

    #[error("exponent vector {0} lies outside the basis index set")]
    ExponentOutOfRange(String),

    #[error("invalid g-assignment: {0}")]
    InvalidGAssignment(String),

    #[error("invalid coproduct table: {0}")]
    InvalidCoproduct(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the field {0} does not contain a square root of -1, required here")]
    FieldLacksSqrtMinusOne(String),

    #[error("search space has {size} assignments, exceeding the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("p-adic valuation of 0 is undefined")]
    UndefinedValuation,

    #[error("binomial arguments out of range: m = {m} exceeds n = {n}")]
    BinomialArguments { n: u64, m: u64 },

    #[error("cannot parse file: {0}")]
    ParseFile(String),
}

impl QciError {
    /// True for errors that mean the input could not even be read or
    /// constructed (as opposed to a violated operation precondition).
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            QciError::NotPrime(_)
                | QciError::ModulusTooLarge(_)
                | QciError::ParseDescriptor(_)
                | QciError::ParseScalar { .. }
                | QciError::InvalidSpec(_)
                | QciError::ExponentOutOfRange(_)
                | QciError::InvalidGAssignment(_)
                | QciError::InvalidCoproduct(_)
                | QciError::ParseFile(_)
        )
    }
}
