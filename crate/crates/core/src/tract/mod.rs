//! Tractability classification for exponential convergence.
//!
//! Each notion is decided from the eigenvalue and weight sequences alone,
//! by evaluating the relevant limit quotients on geometric probe grids.

mod criteria;
mod diagnostic;
mod probes;
mod registry;
mod report;

use serde::Serialize;
use thiserror::Error;

pub use criteria::{
    CatalogNotion, CatalogOutcome, CriterionOutcome, Expectation, MixedPath, NamedDiagnostic,
    ProbeKind, TractContext, MIXED_PATHS, UNIT_WEIGHT_SCAN,
};
pub use diagnostic::{
    assess, geometric_probes, limit_diagnostic, limit_diagnostic_ln, LimitDiagnostic, LimitVerdict,
    Sample, Thresholds,
};
pub use probes::{
    cross_check_closed_form, index_at, ln_threshold_magnitude, ClosedFormCheck, IndexScale,
    IndexSource, ProbeGrid, ThresholdProbe, ThresholdTable, CLOSED_FORM_CHECKS,
};
pub use registry::{eigenvalue_registry, registry, weight_registry, RegistryEntry};
pub use report::{
    classify, classify_with, cross_checks, ClassificationReport, ClassifyOptions, CrossCheck,
    Method, NotionEntry, CROSS_CHECK_S, DEFAULT_DELTAS, DEFAULT_PAIRS,
};

use crate::seqcore::SeqError;

#[derive(Debug, Error)]
pub enum TractError {
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    /// The verdicts contradict an implication between notions.
    #[error("inconsistent classification: {}", .0.join("; "))]
    Internal(Vec<String>),
}

/// Outcome of one criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    /// Conjunction: fails if any part fails, holds only if every part holds.
    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Holds;
        for v in parts {
            match v {
                Verdict::Fails => return Verdict::Fails,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Holds => {}
            }
        }
        out
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}
