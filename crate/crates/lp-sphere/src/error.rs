//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated hypothesis of a theorem/operation failed a numerical check.
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: String, detail: String },

    /// A quadrature or series evaluation could not certify the requested
    /// accuracy; carries the partial result and the error estimate.
    #[error("accuracy error in {what}: est_error {est_error:e} above tolerance (partial = {partial:e})")]
    Accuracy {
        what: String,
        partial: f64,
        est_error: f64,
    },

    /// Enumeration or iteration budget exceeded; reports how far we got.
    #[error("resource budget exceeded in {what}: completed up to {completed}")]
    Resource { what: String, completed: String },

    /// The bound would be vacuous (non-positive normalization integral).
    #[error("degenerate bound: {0}")]
    DegenerateBound(String),

    /// Unknown builtin lattice or malformed lattice file.
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),

    /// Malformed input data (lattice files, CLI parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
