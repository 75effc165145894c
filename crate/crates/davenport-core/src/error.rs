//! Error and falsification types shared across the crate.

use alloc::string::String;
use core::fmt;

/// A runtime detection that a certified mathematical invariant failed.
///
/// These are never produced on valid inputs; a populated value means a
/// claim the constructions rely on was contradicted by computation, and
/// it carries a serialized counterexample for the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsification {
    /// Which claim broke, e.g. `"upper-bound-cap"` or `"chain-growth"`.
    pub claim: String,
    /// Where it broke (ring moduli, group factors, ...).
    pub context: String,
    /// The counterexample data, rendered as text.
    pub counterexample: String,
}

impl fmt::Display for Falsification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "falsified claim `{}` on {}: {}",
            self.claim, self.context, self.counterexample
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input violates a documented precondition.
    InvalidInput(String),
    /// An enumeration would exceed the configured limit.
    ResourceLimit(String),
    /// A certified invariant was contradicted by computation.
    Falsified(Falsification),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
            Error::Falsified(falsification) => falsification.fmt(f),
        }
    }
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
