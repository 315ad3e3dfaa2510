use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("no irreducible modulus of degree {e} over F_{p}")]
    NoModulusFound { p: u64, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("field with {p}^{e} elements is too large to enumerate")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable x{index} at position {position}")]
    UnknownVariable { index: usize, position: usize },
    #[error("polynomial {index} is not homogeneous")]
    NonHomogeneous { index: usize },
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("enumeration budget exceeded at k = {k} (largest completed k = {completed})")]
    BudgetExceeded { k: u32, completed: u32 },
    #[error("series coefficient z_{index} is not an integer")]
    NonIntegralCoefficient { index: usize },
    #[error("series coefficient z_{index} is negative")]
    NegativeCoefficient { index: usize },
    #[error("no rational approximant of the requested type")]
    NoApproximant,
    #[error("reconstructed rational function does not have integer coefficients")]
    NonIntegerOutput,
    #[error("zeta function did not stabilize within degree bound {0}")]
    NotStabilized(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("factor is not pure of a single integral weight: {0}")]
    ImpureFactor(String),
    #[error("root finding failed: {0}")]
    RootFindingFailed(String),
    #[error("largest pole weight {0} is odd")]
    OddTopWeight(u32),
    #[error("zeta function of a nonempty variety has no pole")]
    NoTopPole,
    #[error("dimension {dim} differs from n - r = {expected}; not a complete intersection")]
    NotCompleteIntersection { dim: i64, expected: i64 },
}

/// Coarse classification used by the command-line exit-code contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or invalid user input.
    Input,
    /// A computation could not be completed (budget, stabilization, purity).
    Computation,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NotPrime(_)
            | FieldMismatch
            | DegreeTooLarge { .. }
            | FieldTooLarge { .. }
            | Syntax { .. }
            | UnknownVariable { .. }
            | NonHomogeneous { .. }
            | ArityMismatch { .. }
            | ZeroPolynomial
            | InvalidVariety(_)
            | InvalidParams(_)
            | NotCompleteIntersection { .. } => ErrorKind::Input,
            _ => ErrorKind::Computation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
