use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {characteristic} does not exceed degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands have different numbers of variables")]
    ArityMismatch,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the zero polynomial has no apolar algebra")]
    ZeroPolynomial,
    #[error("operator is not a unit (zero constant term)")]
    NotAUnit,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("ambient space mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("symmetric decomposition invariant violated: {0}")]
    DecompositionInvariantViolated(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("leading form of degree {degree} is not in the unipotent tangent space")]
    NotInTangent { degree: u32 },
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("top degree form of the input differs from the target")]
    TdfMismatch,
    #[error("not t-compressed: {0}")]
    NotTCompressed(String),
    #[error("wrong Hilbert function: {0}")]
    WrongHilbertFunction(String),
    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
