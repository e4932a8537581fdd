use thiserror::Error;

use crate::geometry::{Line, Point};

/// Errors raised by geometric constructors and arrangement analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points coincide: {0}")]
    IdenticalPoints(Point),
    #[error("lines coincide: {0}")]
    IdenticalLines(Line),
    #[error("coefficients a and b are both zero")]
    DegenerateLine,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("duplicate points in betweenness query")]
    DuplicatePoints,
    #[error("line listed twice: {0}")]
    DuplicateLine(Line),
    #[error("point listed twice: {0}")]
    DuplicatePoint(Point),
    #[error("family generators need k >= 3, got {0}")]
    BadK(usize),
    #[error("point {0} is not a registration mark of the arrangement")]
    UnknownPoint(Point),
    #[error("point {0} is not a centrex")]
    NotACentrex(Point),
    #[error("operation needs at least {required} registration marks, got {found}")]
    TooFewPoints { required: usize, found: usize },
    #[error("{mode} comparison needs at least {required} registration marks, got {found}")]
    UnsupportedDegenerate {
        mode: &'static str,
        required: usize,
        found: usize,
    },
    #[error("arrangement violates the construction rules: {0}")]
    Invalid(String),
    #[error("{0}")]
    BadArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
