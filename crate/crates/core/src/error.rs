use thiserror::Error;

/// Errors raised by constructions whose preconditions fail.
///
/// Mathematical verdicts (a twist equation that does not hold, a Hopf axiom
/// with a witness) are *not* errors; they are entries of a
/// [`VerificationReport`](crate::report::VerificationReport).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor {requested} exceeds the configured limit {limit}")]
    ConductorOverflow { requested: usize, limit: usize },

    #[error("cannot parse cyclotomic literal {literal:?}: {reason}")]
    Literal { literal: String, reason: String },

    #[error("q-integer ({index})_q vanishes; request out of range")]
    VanishingQInteger { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid group: {0}")]
    Group(String),

    #[error("invalid character: {0}")]
    Character(String),

    #[error("invalid datum: {0}")]
    Datum(String),

    #[error("scalar family is not compatible: {0}")]
    Incompatible(String),

    #[error("element is not nilpotent of order {order}")]
    NotNilpotent { order: usize },

    #[error("arity mismatch: {left} vs {right}")]
    Arity { left: usize, right: usize },

    #[error("{0}")]
    Hypothesis(String),

    #[error("linear system has no unique solution: {0}")]
    Singular(String),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionBudget { dim: usize, cap: usize },

    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
