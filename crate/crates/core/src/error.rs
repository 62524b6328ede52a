use crate::exactgeom::GeomError;

/// Errors shared by the domain modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("unknown root system component {0:?}")]
    UnknownRootSystem(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("invalid skeleton: {}", .0.join("; "))]
    InvalidSkeleton(Vec<String>),
    #[error("invalid fan: {}", .0.join("; "))]
    InvalidFan(Vec<String>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
