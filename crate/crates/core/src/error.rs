use thiserror::Error;

use crate::geom::PointId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("three points on a common line: {0}, {1}, {2}")]
    CollinearInput(PointId, PointId, PointId),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(PointId, PointId),
    #[error("duplicate point id {0}")]
    DuplicateId(PointId),
    #[error("unknown point {0}")]
    UnknownPoint(PointId),
    #[error("dummy point {0} must be red and reference a real red host")]
    InvalidDummy(PointId),
    #[error("pivot {0} is not a convex hull vertex")]
    PivotNotOnHull(PointId),
    #[error("vertex {0} is not visible from the viewpoint")]
    NotVisible(PointId),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("|R| = |B| = {0} is only supported up to {1} points (exhaustive search)")]
    EqualSizesUnsupported(usize, usize),
    #[error("instance has {0} points, above the exhaustive search cap {1}")]
    TooLarge(usize, usize),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

pub(crate) fn broken(msg: impl Into<String>) -> Error {
    Error::InternalInvariantBroken(msg.into())
}
