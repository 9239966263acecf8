use thiserror::Error;

/// Everything that can go wrong on the input side. Failed verifications are
/// not errors; they come back as reports with a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("sigma is not an involution")]
    NotInvolution,
    #[error("sigma is not an isometry of the form")]
    NotIsometry,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("sublattice is not sigma-stable")]
    NotStable,
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("zero scale: the vector lies in the kernel of the form")]
    ZeroScale,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
