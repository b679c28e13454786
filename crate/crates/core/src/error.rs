use thiserror::Error;

/// Errors raised by the geometry and counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Some point of the set spans a direction parallel to the projection
    /// hyperplane, or the centre lies on it.
    #[error("hyperplane is not generic for this projection (point index {point})")]
    NonGenericHyperplane { point: usize },

    #[error("no generic hyperplane found after {attempts} attempts")]
    GenericityExhausted { attempts: usize },

    /// A property that holds by construction failed; always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("generator could not satisfy its genericity checks after {attempts} sub-seeds: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
