use thiserror::Error;

use crate::vanish::Fact;

/// Everything that can go wrong in the calculator.
///
/// The variants line up with the three failure classes callers care about:
/// bad input, input that is well-formed but mathematically inconsistent, and
/// an internal identity that should always hold but did not.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no such reflexive sheaf: c3 = {c3} is negative")]
    NoSuchSheaf { c3: crate::Q },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("contradictory facts:\n  {first}\n  {second}")]
    Contradiction { first: Box<Fact>, second: Box<Fact> },

    #[error("identity failure: {0}")]
    Identity(String),
}

impl Error {
    /// True for errors caused by mathematically inconsistent (but well-formed) data.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::NoSuchSheaf { .. } | Error::Inconsistent(_) | Error::Contradiction { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
