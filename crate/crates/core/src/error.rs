use thiserror::Error;

use crate::star_ring::ADMITTED;

/// Errors raised by the ring, lattice and order machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("core matrix F*AG* is singular (improper descriptor?)")]
    SingularCore,
    #[error("Gram matrix is singular (improper descriptor?)")]
    SingularGram,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not self-adjoint")]
    NotSelfAdjoint,
    #[error("properness is not decidable for {0}")]
    NotDecidable(String),
    #[error("ring {0} is not enumerable")]
    NotEnumerable(String),
    #[error("ring {0} is not admitted as a proper *-ring; admitted: {ADMITTED}")]
    ImproperDescriptor(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("unknown formulation: {0}")]
    UnknownFormulation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
