use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    NotWeaklyDecreasing(Vec<usize>),

    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{inner} is not contained in {outer}")]
    ContainmentViolation { outer: Partition, inner: Partition },

    #[error("{outer} \\ {inner} is not a partition shape")]
    NotAPartition { outer: Partition, inner: Partition },

    #[error("the empty partition has no normalization")]
    EmptyPartition,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{0} is not rectangular")]
    NotRectangular(Partition),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("oracle budget exceeded: size {size} > budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("weight constraint violated: {0}")]
    WeightConstraintViolation(String),

    #[error("{n} does not divide {m}")]
    Divisibility { n: usize, m: usize },

    #[error("rank {k} outside the admissible range [{lo}, {hi}]")]
    RankOutOfRange { k: usize, lo: usize, hi: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    ConvergenceFailure { sweeps: usize, off: f64 },

    #[error("character cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
