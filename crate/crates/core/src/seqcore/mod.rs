//! Eigenvalue and weight sequences, threshold indices and the envelope.

mod envelope;
mod instance;
mod listfile;
mod sequence;
mod threshold;

use thiserror::Error;

pub use envelope::{envelope_regularize, envelope_violations, ENVELOPE_RELATIVE_SLACK};
pub use instance::ProblemInstance;
pub use listfile::{load_list_file, model_from_list_text, parse_list};
pub use sequence::{Family, Role, SequenceModel, Tail};
pub use threshold::{d_of_epsilon, j_of_epsilon, threshold_index, IndexBound, SEARCH_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqError {
    #[error("invalid sequence model: {}", .0.join("; "))]
    InvalidModel(Vec<String>),
    #[error("index search exceeded 2^62 below threshold exp({ln_threshold})")]
    RangeExceeded { ln_threshold: f64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// `eval_sequence`: the entry `s_j` of a validated model.
pub fn eval_sequence(model: &SequenceModel, j: u64) -> Result<crate::LogValue, SeqError> {
    model.eval(j)
}

/// `weighted_eigenvalue`: `λ_{k,j}` of an instance.
pub fn weighted_eigenvalue(
    instance: &ProblemInstance,
    k: u64,
    j: u64,
) -> Result<crate::LogValue, SeqError> {
    instance.weighted_eigenvalue(k, j)
}
