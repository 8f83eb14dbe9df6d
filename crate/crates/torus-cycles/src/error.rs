use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter was outside the domain of the requested operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A parameter was syntactically valid but maps outside the model's range,
    /// e.g. an edge probability whose radius would exceed 1/2.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// The request exceeds a hard capacity bound of an exact algorithm.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A series or recurrence failed to reach the requested accuracy.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// No edge probability in the admissible range reaches the target.
    #[error("no threshold: {0}")]
    NoThreshold(String),
}

pub type Result<T> = std::result::Result<T, Error>;
