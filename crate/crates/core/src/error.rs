use thiserror::Error;

/// Errors raised by the lattice, projection and tiling routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("rank {rank} is outside the supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },

    #[error("zero vector cannot be used as a root")]
    ZeroRoot,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid root set: {0}")]
    InvalidRoots(String),

    #[error("could not synthesize a cyclic root basis for rank {0}")]
    CyclicSynthesis(usize),

    #[error("expected {expected} offsets (one per simple root), got {got}")]
    OffsetCount { expected: usize, got: usize },

    #[error("Coxeter number must be even and at least 4, got {0}")]
    InvalidCoxeterNumber(usize),

    #[error("plane index {plane} is invalid for rank {rank}")]
    InvalidPlane { plane: usize, rank: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("dissociation search exhausted for rank {0}")]
    DissociationInfeasible(usize),

    #[error("geometry defect: {0}")]
    GeometryDefect(String),

    #[error("invalid seed vertex: {0}")]
    InvalidSeed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
