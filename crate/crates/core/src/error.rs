use thiserror::Error;

/// Failures surfaced by the solvers and their geometric building blocks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate direction: the two points coincide")]
    DegenerateDirection,
    #[error("outer tangents need two circles of equal positive radius")]
    UnequalRadii,
    #[error("instance has no customers")]
    EmptyInstance,
    #[error("customer {index} has non-positive or non-finite weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("non-finite coordinate for customer {index}")]
    NonFiniteCoordinate { index: usize },
    #[error("separation distance must be finite and non-negative, got {0}")]
    InvalidSeparation(f64),
    #[error("unsupported configuration: {0}")]
    Unsupported(&'static str),
    #[error("customers {first} and {second} share the {axis} coordinate {value}")]
    SharedCoordinate {
        axis: char,
        first: usize,
        second: usize,
        value: f64,
    },
    #[error("customers {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("query line must not be horizontal")]
    HorizontalLine,
    #[error("weighted median of an empty list")]
    EmptySelection,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
