use thiserror::Error;

use crate::monomial::Monomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("unknown index {index} out of range 1..={count}")]
    UnknownOutOfRange { index: usize, count: usize },

    #[error("arity must be between 1 and {max}, got {got}")]
    BadArity { got: usize, max: usize },

    #[error("operation requires a non-empty monomial set")]
    EmptySet,

    #[error("{divisor} does not divide {dividend}")]
    NotADivisor { divisor: Monomial, dividend: Monomial },

    #[error("weights must be non-negative; found {value} at {location}")]
    NegativeWeight { value: i64, location: String },

    #[error("weight matrix shape mismatch: {0}")]
    WeightShape(String),

    #[error("duplicate leading derivative {0}")]
    DuplicateLead(String),

    #[error("right-hand side term {rhs} is not anterior to leading derivative {lead}")]
    NotAnterior { lead: String, rhs: String },

    #[error("set of leading monomials for unknown {unknown} is not complete")]
    NotComplete { unknown: usize },

    #[error("principal derivative {0} has no Janet divisor; the system is not complete")]
    NoJanetDivisor(String),

    #[error("compatibility condition fails: {0}")]
    CompatibilityFailure(String),

    #[error("initial data does not match the template: {0}")]
    DataMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {0}")]
    Io(String),

    #[error("invalid system: {0}")]
    Invalid(String),

    #[error("internal error: {0}")]
    Internal(String),
}
