use thiserror::Error;

/// Errors surfaced by the library.
///
/// Configuration problems (bad ranks, out-of-range parameters, regime
/// violations) are kept apart from integrity failures so that front ends can
/// map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank {n} exceeds the configured bound {bound}")]
    RankTooLarge { n: usize, bound: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid window {0:?}: absolute values must form a permutation of 1..n")]
    InvalidWindow(Vec<i32>),
    #[error("generator index {index} out of range for rank {n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid ratio {0}: expected P/Q with positive integers")]
    InvalidRatio(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the caller's configuration rather than by a
    /// failed mathematical check.
    pub fn is_configuration(&self) -> bool {
        !matches!(self, Error::Integrity(_) | Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
