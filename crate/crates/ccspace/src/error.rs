use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("empty label")]
    EmptyLabel,
    #[error("set is not contained in the given carrier")]
    NotASubset,
    #[error("enumeration cap exceeded: {size} elements, cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("exhaustive mode requires at most {max} symbols, got {got}")]
    TooLargeForExhaustive { got: usize, max: usize },
    #[error("epsilon must lie in the open interval (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
    #[error("thought sequence is empty")]
    EmptySequence,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
