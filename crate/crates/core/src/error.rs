use thiserror::Error;

/// Errors raised by the bounding and query routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("map {index} is not a contraction: {reason}")]
    NotContraction { index: usize, reason: String },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("an IFS needs at least one map")]
    EmptySystem,

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("address index {index} out of range for a {maps}-map system")]
    IndexOutOfRange { index: usize, maps: usize },

    #[error("node budget exceeded: {required} nodes requested, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("expected a {expected}-map system, got {actual} maps")]
    WrongMapCount { expected: usize, actual: usize },

    #[error("fixed points are collinear, no circumcircle exists")]
    Collinear,

    #[error("circumcircle has no real solution: {0}")]
    NoRealCircumcircle(String),

    #[error("ball does not bound the attractor (worst slack {worst_slack:e})")]
    NotBounding { worst_slack: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty scene")]
    EmptyScene,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
