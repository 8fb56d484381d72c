use thiserror::Error;

/// Errors raised by the polyhedral engine and the invariants built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The ideal does not contain a pure power of every variable.
    #[error("ideal is not of finite colength")]
    NotFiniteColength,

    #[error("dimension {n} exceeds the supported maximum of {cap} variables")]
    DimensionLimit { n: usize, cap: usize },

    #[error("linear program region is empty")]
    EmptyRegion,

    /// Rees mixed multiplicity did not settle before the configured cap.
    #[error("mixed multiplicities did not stabilize within {cap} steps of m^r")]
    NonStabilized { cap: u32 },

    /// A mathematical invariant was breached. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
pub(crate) use internal;
