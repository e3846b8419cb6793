use crate::field::FieldSpec;

/// Errors raised by the library.
///
/// Variants fall into three groups that the CLI maps onto exit codes:
/// theorem violations (an identity that must hold did not), budget refusals,
/// and everything else, which is bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),

    #[error("enumeration needs {needed} candidates but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("{operation} needs a finite field")]
    InfiniteField { operation: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("table is not a Leibniz algebra: {0}")]
    NotLeibniz(String),

    #[error("subspace is not a two-sided ideal: {0}")]
    NotIdeal(String),

    #[error("subspace is not closed under the bracket: {0}")]
    NotSubalgebra(String),

    #[error("invalid metabelian datum: {0}")]
    InvalidDatum(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("retry budget exhausted after {attempts} attempts")]
    RetriesExhausted { attempts: u64 },

    /// An identity guaranteed by a theorem failed. Signals a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
