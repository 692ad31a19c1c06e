//! Closed-form upper bounds on the information complexity, all in log form.

mod block;
mod partition;

use serde::Serialize;
use thiserror::Error;

pub use block::{
    block_bound_power, block_bound_sum, block_bounds, block_budget_a, product_block_bound,
    BlockBound,
};
pub use partition::{dyadic_partition, Block, DyadicPartition, MIN_PARTITION_DIMENSION};

use crate::counting::{count_exact, CountError, CountResult};
use crate::seqcore::{d_of_epsilon, j_of_epsilon, IndexBound, ProblemInstance, SeqError};

/// Absolute slack for comparing a log count with a log bound. Covers the
/// rounding of `ln` and log-gamma only.
pub const LOG_COMPARISON_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("block {block}: gamma * lambda_2 = exp({ln_product}) is not below 1, so the block budget is undefined")]
    DegenerateDenominator { block: u32, ln_product: f64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

/// Upper end of the dimension-saturation bracket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SaturationBound {
    /// `min(d, d(ε)) · ln j(ε)`, with `j^0 = 1`.
    pub ln_upper: f64,
    /// `d(ε)`: the count is the same for every `d ≥ d(ε)`.
    pub saturation_d: u64,
    pub j_eps: u64,
    /// `ε^{2 d(ε)}`, the accuracy whose count dominates `ln_upper` when `d(ε) ≥ 1`.
    pub lower_epsilon: f64,
}

/// `ln j(ε)^{min(d, d(ε))}` and `d(ε)`. Requires weights tending to zero.
pub fn saturation_bound(
    instance: &ProblemInstance,
    eps: f64,
) -> Result<SaturationBound, BoundsError> {
    if !instance.gammas().tends_to_zero() {
        return Err(BoundsError::Hypothesis(
            "the weights must tend to zero for dimension saturation".into(),
        ));
    }
    let j_eps = j_of_epsilon(instance.lambdas(), eps)?;
    let saturation_d = match d_of_epsilon(instance.gammas(), eps)? {
        IndexBound::Finite(n) => n,
        IndexBound::Infinite => {
            return Err(BoundsError::Hypothesis(
                "d(eps) is infinite: the weights do not decay below eps^2".into(),
            ))
        }
    };
    let exponent = instance.d().min(saturation_d);
    let ln_upper = if exponent == 0 {
        0.0
    } else {
        exponent as f64 * (j_eps as f64).ln()
    };
    let lower_epsilon = (2.0 * saturation_d as f64 * eps.ln()).exp();
    Ok(SaturationBound {
        ln_upper,
        saturation_d,
        j_eps,
        lower_epsilon,
    })
}

/// `ln C(m, s)` and its estimate `s · ln(e m / s)`, for `1 ≤ s ≤ m`.
pub fn ln_binomial_bound(m: u64, s: u64) -> Result<(f64, f64), BoundsError> {
    if s == 0 || s > m {
        return Err(BoundsError::InvalidArgument(format!(
            "need 1 <= s <= m, got s = {s}, m = {m}"
        )));
    }
    let exact = crate::logvalue::ln_binomial(m, s);
    let bound = s as f64 * (1.0 + (m as f64 / s as f64).ln());
    Ok((exact, bound))
}

/// Diagnostic balance level: the smallest `l` with
/// `2^{l/s} · h(2^l) ≥ ln ε⁻²`, where `h[k-1] = h(k)` is an envelope.
/// `None` when the envelope is too short to reach the level.
pub fn balance_level(ln_inv_eps_sq: f64, s: f64, h: &[f64]) -> Option<u32> {
    let mut l = 0u32;
    while let Some(hk) = h.get((1usize << l) - 1) {
        if (l as f64 / s) * std::f64::consts::LN_2 + hk.ln() >= ln_inv_eps_sq.ln() {
            return Some(l);
        }
        l += 1;
        if l >= usize::BITS - 1 {
            break;
        }
    }
    None
}

/// Every bound available for an instance at one `ε`, with the exact count
/// when it completes under the cap.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub epsilon: f64,
    pub d: u64,
    pub saturation: Option<SaturationBound>,
    /// Empty for `d < 8`, where the partition is undefined.
    pub block_bounds: Vec<BlockBound>,
    pub ln_product_bound: Option<f64>,
    pub exact_count: Option<CountResult>,
    /// Why a bound is missing.
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn ln_count(&self) -> Option<f64> {
        self.exact_count
            .and_then(|c| c.count.exact())
            .map(|n| (n as f64).ln())
    }

    /// Every bound that the exact count exceeds.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Some(ln_count) = self.ln_count() else {
            return out;
        };
        let mut check = |name: &str, bound: f64| {
            if ln_count > bound + LOG_COMPARISON_SLACK {
                out.push(format!("ln count {ln_count} exceeds {name} {bound}"));
            }
        };
        if let Some(l1) = &self.saturation {
            check("dimension-saturation bound", l1.ln_upper);
        }
        if let Some(p) = self.ln_product_bound {
            check("product block bound", p);
        }
        out
    }
}

/// Assembles a [`BoundReport`]. Missing bounds are explained in `notes`
/// rather than failing the whole report; `cap = None` skips exact counting.
pub fn bound_report(
    instance: &ProblemInstance,
    eps: f64,
    cap: Option<u64>,
) -> Result<BoundReport, BoundsError> {
    let mut notes = Vec::new();
    let saturation = match saturation_bound(instance, eps) {
        Ok(s) => Some(s),
        Err(BoundsError::Hypothesis(msg)) => {
            notes.push(msg);
            None
        }
        Err(e) => return Err(e),
    };
    let (block_bounds, ln_product_bound) = if instance.d() < MIN_PARTITION_DIMENSION {
        notes.push(format!(
            "d = {} is below {MIN_PARTITION_DIMENSION}; block bounds are not defined",
            instance.d()
        ));
        (Vec::new(), None)
    } else {
        match block_bounds(instance, eps) {
            Ok(blocks) => {
                let total = blocks.iter().map(|b| b.ln_power_bound).sum();
                (blocks, Some(total))
            }
            Err(e @ BoundsError::DegenerateDenominator { .. }) => {
                notes.push(e.to_string());
                (Vec::new(), None)
            }
            Err(e) => return Err(e),
        }
    };
    let exact_count = match cap {
        Some(cap) => Some(count_exact(instance, eps, cap)?),
        None => None,
    };
    Ok(BoundReport {
        epsilon: eps,
        d: instance.d(),
        saturation,
        block_bounds,
        ln_product_bound,
        exact_count,
        notes,
    })
}
