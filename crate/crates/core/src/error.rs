use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha = {0} lies outside the open interval (1/3, 1/2)")]
    AlphaOutOfRange(f64),

    #[error("p = {p} does not exceed 1/alpha = {min}")]
    IntegrabilityTooLow { p: f64, min: f64 },

    #[error("p = infinity (the Hölder case) is not supported")]
    InfiniteP,

    #[error("degenerate grid: {0} samples, at least 4 are required")]
    DegenerateGrid(usize),

    #[error("cascade iteration did not converge: last sup-norm change {0:e}")]
    CascadeDiverged(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not in G2: symmetric defect {defect:e} exceeds {tol:e}")]
    NotInGroup { defect: f64, tol: f64 },

    #[error("GroupMembershipViolated: element {index} has symmetric defect {defect:e} (tolerance {tol:e})")]
    GroupMembershipViolated { index: usize, defect: f64, tol: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("config mismatch: {0}")]
    ConfigMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at row {row}: {msg}")]
    Parse { row: usize, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 3,
            Error::NotInGroup { .. } | Error::GroupMembershipViolated { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
