use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments violate an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// An exhaustive computation was refused because it exceeds the configured guard.
    #[error("resource guard: {0}")]
    Resource(String),
    /// The requested limit is not defined for this model/regime combination.
    #[error("not provided: {0}")]
    NotProvided(String),
    /// A functional-equation solver failed to converge.
    #[error("solver error: {0}")]
    Solver(String),
    /// Two independent routes disagreed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

macro_rules! usage {
    ($($arg:tt)*) => { $crate::Error::Usage(alloc::format!($($arg)*)) };
}
macro_rules! resource {
    ($($arg:tt)*) => { $crate::Error::Resource(alloc::format!($($arg)*)) };
}
pub(crate) use resource;
pub(crate) use usage;
