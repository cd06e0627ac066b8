use thiserror::Error;

/// Errors raised while constructing or transforming posets and their certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("a poset must have at least one element")]
    EmptyPoset,
    #[error("element index {index} out of range for a poset of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the relation forces a cycle through element {element}")]
    CycleDetected { element: usize },
    #[error("{n} elements exceeds the configured maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("selection is empty")]
    EmptySelection,
    #[error("element {0} appears more than once in the selection")]
    DuplicateElement(usize),
    #[error("interval endpoints {lower} and {upper} are not ordered")]
    IncomparableEndpoints { lower: usize, upper: usize },
    #[error("{x} <= {y} holds, so no extension can place {y} before {x}")]
    RelationForced { x: usize, y: usize },
    #[error("not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("ordering places {upper} before {lower} although {lower} < {upper}")]
    NotAnExtension { lower: usize, upper: usize },
    #[error("{0}")]
    Malformed(String),
}

pub type Result<T, E = OrderError> = std::result::Result<T, E>;
