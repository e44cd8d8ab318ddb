//! Error taxonomy shared by every module in the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid configuration (precision out of range, bad CLI parameter, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Input outside the mathematical domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No closed-form reduction is implemented for the requested index family.
    #[error("unsupported reduction: {0}")]
    UnsupportedReduction(String),

    /// The precision budget required to honour the request is not attainable.
    #[error("precision budget exceeded: {0}")]
    Precision(String),

    /// A size guard tripped (table too large, enumeration too deep, ...).
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An iterative scheme failed to converge within its iteration budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Relation search was asked to run with provably insufficient precision.
    #[error("insufficient precision for relation search: {0}")]
    RelationPrecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
