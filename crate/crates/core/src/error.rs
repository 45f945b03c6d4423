use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: wrong lengths, indices out of range, zero vectors.
    #[error("validation error: {0}")]
    Validation(String),
    /// A mathematical precondition of the requested operation does not hold.
    #[error("precondition failed: {what} [{anchor}]")]
    Precondition { what: String, anchor: &'static str },
    #[error("not Cartier: {0}")]
    NotCartier(String),
    #[error("not a polytope: the feasible region is unbounded")]
    NotAPolytope,
    #[error("not a lattice polytope: {0}")]
    NotLattice(String),
    /// Two computations that must agree did not; indicates a bug or inconsistent input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn precondition(what: impl Into<String>, anchor: &'static str) -> Self {
        Error::Precondition { what: what.into(), anchor }
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
