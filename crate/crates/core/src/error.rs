use thiserror::Error;

/// Errors raised by series arithmetic and the verification layers built on it.
///
/// A failed identity is never an error: it becomes a `fail` item in a
/// [`crate::report::VerificationReport`]. Errors are reserved for inputs an
/// operation cannot accept.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series that vanishes to its entire known order")]
    DivisionByZero,
    #[error("order underflow: {0}")]
    OrderUnderflow(String),
    #[error("leading coefficient must be 1 for a non-integer power (found {0})")]
    NonUnitLeading(String),
    #[error("exp needs a series with no terms of exponent <= 0")]
    ExpDomain,
    #[error("log needs a series of the form 1 + (terms of positive exponent)")]
    LogDomain,
    #[error("inner series of a composition must have positive valuation")]
    NonPositiveValuation,
    #[error("operation needs integer exponents, series has ramification {0}")]
    FractionalExponents(u32),
    #[error("reversion needs a series of the form c*q + ... with c != 0")]
    ZeroLinearCoefficient,
    #[error("hypergeometric lower parameter {0} is zero or a negative integer")]
    InvalidLowerParameter(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid truncation order {0} (must be at least {1})")]
    InvalidOrder(usize, usize),
    #[error("degenerate denominator: {0}")]
    Degenerate(String),
    #[error("operator is not of maximal unipotent monodromy type: {0}")]
    NotMum(String),
    #[error("operator cannot act here: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
