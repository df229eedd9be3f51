use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at byte {offset}: {message}")]
    Malformed { offset: usize, message: String },

    #[error("element {element} appears more than once")]
    DuplicateElement { element: usize },

    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("element {element} is missing (fixed points must be written as 1-cycles)")]
    MissingElement { element: usize },

    #[error("ground set size must be at least {min}, got {n}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("{name} = {value} is outside the allowed range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: usize,
        range: String,
    },

    #[error("transposition needs two distinct elements, got ({i}, {j})")]
    DegenerateTransposition { i: usize, j: usize },

    #[error("{0} is not a cycle of the permutation")]
    NotACycle(String),

    #[error("invalid labeling: {0}")]
    InvalidLabels(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant broken: {0}")]
    Corrupted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
