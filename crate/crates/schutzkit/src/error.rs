//! Error type shared across the crate.
//!
//! Two failure classes are distinguished because they map to different CLI
//! exit codes: malformed or incompatible inputs (`Input`, exit 2) and size
//! guards tripping on feasible-but-too-large instances (`Guard`, exit 3).
//! Law violations discovered by validators are *not* errors; they are entries
//! in a [`crate::object::ValidationReport`].

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input, unknown names, variety mismatches, violated
    /// operation preconditions.
    #[error("input error: {0}")]
    Input(String),
    /// A size guard tripped; the message names the offending cardinality.
    #[error("size guard exceeded: {0}")]
    Guard(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
