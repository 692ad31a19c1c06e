//! Command-line front end for `exptract`: exact counts, bounds,
//! classification reports and parameter sweeps, driven by a TOML run file.

pub mod config;
pub mod format;
pub mod run;

use thiserror::Error;

/// Failures with their process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit 1: the run file does not validate.
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
    /// Exit 1: an output file could not be written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// Exit 2: a threshold lies beyond the reach of the index search.
    #[error("range exceeded: {0}")]
    RangeExceeded(String),
    /// Exit 3: a count hit the cap and the run asked for exact counts.
    #[error("count capped at epsilon = {epsilon}, d = {d}; raise `cap` or drop `require_exact`")]
    CapExceeded { epsilon: f64, d: u64 },
    /// Exit 4: an internal invariant failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::RangeExceeded(_) => 2,
            CliError::CapExceeded { .. } => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<exptract::seqcore::SeqError> for CliError {
    fn from(e: exptract::seqcore::SeqError) -> Self {
        use exptract::seqcore::SeqError;
        match e {
            SeqError::RangeExceeded { .. } => CliError::RangeExceeded(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<exptract::counting::CountError> for CliError {
    fn from(e: exptract::counting::CountError) -> Self {
        use exptract::counting::CountError;
        match e {
            CountError::Sequence(s) => s.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<exptract::bounds::BoundsError> for CliError {
    fn from(e: exptract::bounds::BoundsError) -> Self {
        use exptract::bounds::BoundsError;
        match e {
            BoundsError::Sequence(s) => s.into(),
            BoundsError::Count(c) => c.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<exptract::tract::TractError> for CliError {
    fn from(e: exptract::tract::TractError) -> Self {
        use exptract::tract::TractError;
        match e {
            TractError::Sequence(s) => s.into(),
            TractError::InvalidArgument(m) => CliError::Config(vec![m]),
            TractError::Internal(v) => CliError::Internal(v.join("; ")),
        }
    }
}
