use num_complex::Complex64;

/// Library-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A precondition on the inputs was violated (point outside the ground
    /// set, contour radii out of order, zero gauge, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The model itself is degenerate (non-normalizable measure, no perfect
    /// matching, singular boundary data).
    #[error("model error: {0}")]
    Model(String),

    /// An iterative numerical scheme failed to converge. Carries the last two
    /// iterates so the caller can judge how bad the situation is.
    #[error("no convergence in {context}: last={last}, previous={previous}")]
    NoConvergence {
        context: String,
        last: Complex64,
        previous: Complex64,
    },

    /// Any other numerical failure (overflow, singular matrix where one was
    /// not expected, ...).
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
