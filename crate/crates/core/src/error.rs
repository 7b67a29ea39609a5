use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("initial point is not feasible: {0}")]
    InfeasibleInitialPoint(String),
    #[error("problem is infeasible")]
    Infeasible,
    #[error("problem is unbounded")]
    Unbounded,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("enumeration too large: {count} items exceeds the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("not a simple path: {0}")]
    NotASimplePath(String),
    #[error("no feasible path from source to sink")]
    NoFeasiblePath,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cutting-plane loop stalled after {0} cuts")]
    CutLoopStalled(usize),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
