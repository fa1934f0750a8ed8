use alloc::string::String;

/// Errors raised by the approximation routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A function returned a non-finite value at a sample point.
    #[error("non-finite evaluation at x = {x}")]
    NonFinite { x: f64 },
    /// A simulation would exceed the dense-matrix size limits.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! precondition {
    ($($arg:tt)*) => {
        $crate::Error::Precondition(alloc::format!($($arg)*))
    };
}
pub(crate) use precondition;
