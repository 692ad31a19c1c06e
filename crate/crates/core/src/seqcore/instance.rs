use serde::Serialize;

use super::{Role, SeqError, SequenceModel};
use crate::logvalue::LogValue;

/// Dimension, univariate eigenvalues and coordinate weights of a weighted
/// tensor product problem.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProblemInstance {
    d: u64,
    lambdas: SequenceModel,
    gammas: SequenceModel,
}

impl ProblemInstance {
    pub fn new(d: u64, lambdas: SequenceModel, gammas: SequenceModel) -> Result<Self, SeqError> {
        let mut violations = Vec::new();
        if d == 0 {
            violations.push("dimension d must be at least 1".to_string());
        }
        if lambdas.role() != Role::Eigenvalues {
            violations.push("first sequence must have the eigenvalue role".to_string());
        }
        if gammas.role() != Role::Weights {
            violations.push("second sequence must have the weight role".to_string());
        }
        if !violations.is_empty() {
            return Err(SeqError::InvalidModel(violations));
        }
        Ok(ProblemInstance { d, lambdas, gammas })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn lambdas(&self) -> &SequenceModel {
        &self.lambdas
    }

    pub fn gammas(&self) -> &SequenceModel {
        &self.gammas
    }

    /// Same sequences, different dimension.
    pub fn with_dimension(&self, d: u64) -> Result<Self, SeqError> {
        Self::new(d, self.lambdas.clone(), self.gammas.clone())
    }

    /// `λ_{k,j}`: 1 for `j = 1`, else `γ_k λ_j`.
    pub fn weighted_eigenvalue(&self, k: u64, j: u64) -> Result<LogValue, SeqError> {
        if k == 0 || k > self.d {
            return Err(SeqError::InvalidArgument(format!(
                "coordinate {k} outside 1..={}",
                self.d
            )));
        }
        if j == 0 {
            return Err(SeqError::InvalidArgument("index j starts at 1".into()));
        }
        if j == 1 {
            return Ok(LogValue::ONE);
        }
        Ok(self.gammas.eval(k)? * self.lambdas.eval(j)?)
    }
}
