use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A size or memory cap would be exceeded.
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Arguments outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    Range(String),

    /// A tree, path or automaton violates a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Interval enclosures too wide to decide a sign, or an ill-conditioned
    /// system. Retrying with more bits usually helps.
    #[error("precision error: {0}")]
    Precision(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
