//! Per-block cardinality bounds under frozen block weights.
//!
//! Inside block `ρ(i)` every weight is replaced by the largest one,
//! `γ_{2^{i-1}}`; the resulting block set
//! `A_ρ(ε) = {j ∈ N^{|ρ|} : ∏ λ_{γ_{2^{i-1}}, j_k} > ε²}` dominates the true
//! block set, and the product of block cardinalities dominates the count.

use serde::Serialize;

use super::{dyadic_partition, Block, BoundsError};
use crate::logvalue::{ln_binomial, ln_falling_factorial, log_sum_exp};
use crate::seqcore::{threshold_index, IndexBound, ProblemInstance, SeqError};

fn check_eps(eps: f64) -> Result<(), BoundsError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(BoundsError::InvalidArgument(format!(
            "epsilon must be a positive finite number, got {eps}"
        )));
    }
    Ok(())
}

/// `ln(γ_{2^{i-1}} λ_2)`, rejected when the product is not below 1.
fn ln_frozen_step(instance: &ProblemInstance, block: &Block) -> Result<f64, BoundsError> {
    let ln_gamma = instance.gammas().ln_at(block.first);
    let step = ln_gamma + instance.lambdas().ln_at(2);
    if step >= 0.0 {
        return Err(BoundsError::DegenerateDenominator {
            block: block.index,
            ln_product: step,
        });
    }
    Ok(step)
}

/// Largest index `j` with `ln λ_j > ln_threshold`; zero when the threshold is
/// at least 1.
fn index_above(instance: &ProblemInstance, ln_threshold: f64) -> Result<u64, BoundsError> {
    if ln_threshold >= 0.0 {
        return Ok(0);
    }
    match threshold_index(instance.lambdas(), ln_threshold)? {
        IndexBound::Finite(n) => Ok(n),
        IndexBound::Infinite => Err(SeqError::InvalidArgument(
            "eigenvalue sequence does not tend to zero".into(),
        )
        .into()),
    }
}

/// Block budget `a_i(ε) = min{|ρ(i)|, ⌈ln ε⁻² / ln(γ_{2^{i-1}} λ_2)⁻¹⌉ − 1}`:
/// the most coordinates of the block that can sit at an index `≥ 2`.
///
/// `⌈x⌉ − 1` is the largest integer `m` with `m < x`, so the budget is found
/// as the largest `m` with `m · ln(γλ_2) > 2 ln ε`, decided by direct
/// comparison of the log products rather than by rounding the quotient.
pub fn block_budget_a(
    instance: &ProblemInstance,
    block: &Block,
    eps: f64,
) -> Result<u64, BoundsError> {
    check_eps(eps)?;
    let step = ln_frozen_step(instance, block)?;
    if eps >= 1.0 || step == f64::NEG_INFINITY {
        return Ok(0);
    }
    let ln_threshold = 2.0 * eps.ln();
    let fits = |m: u64| (m as f64) * step > ln_threshold;
    let size = block.len();
    if fits(size) {
        return Ok(size);
    }
    // fits(0) holds and fits(size) does not; start from the quotient and settle exactly.
    let quotient = ln_threshold / step;
    let mut m = (quotient.ceil() - 1.0).clamp(0.0, size as f64) as u64;
    while m + 1 < size && fits(m + 1) {
        m += 1;
    }
    while m > 0 && !fits(m) {
        m -= 1;
    }
    Ok(m)
}

/// `ln(C(|ρ|, a) · j(ε/√γ_{2^{i-1}})^a)`, never below `ln 1 = 0`.
pub fn block_bound_power(
    instance: &ProblemInstance,
    block: &Block,
    eps: f64,
) -> Result<f64, BoundsError> {
    let a = block_budget_a(instance, block, eps)?;
    if a == 0 {
        return Ok(0.0);
    }
    let ln_gamma = instance.gammas().ln_at(block.first);
    let j = index_above(instance, 2.0 * eps.ln() - ln_gamma)?;
    let bound = ln_binomial(block.len(), a) + (a as f64) * (j as f64).ln();
    Ok(bound.max(0.0))
}

/// `ln(1 + Σ_{m=1}^{a} |ρ|!/(|ρ|−m)! · ∏_{k=1}^{m} j(y_{m,k}))` with
/// `y_{m,k} = (ε / √(γ^m λ_2^{m−k}))^{1/k}` and `γ = γ_{2^{i-1}}`.
///
/// A factor `j(y) = 0` (argument `y ≥ 1`) removes its whole `m`-term.
pub fn block_bound_sum(
    instance: &ProblemInstance,
    block: &Block,
    eps: f64,
) -> Result<f64, BoundsError> {
    let a = block_budget_a(instance, block, eps)?;
    if a == 0 {
        return Ok(0.0);
    }
    let ln_eps = eps.ln();
    let ln_gamma = instance.gammas().ln_at(block.first);
    let ln_lambda2 = instance.lambdas().ln_at(2);
    let mut terms = vec![0.0];
    'terms: for m in 1..=a {
        let mut ln_term = ln_falling_factorial(block.len(), m);
        for k in 1..=m {
            // ln y² = (2 ln ε − m ln γ − (m − k) ln λ_2) / k
            let ln_y_sq =
                (2.0 * ln_eps - m as f64 * ln_gamma - (m - k) as f64 * ln_lambda2) / k as f64;
            let j = index_above(instance, ln_y_sq)?;
            if j == 0 {
                continue 'terms;
            }
            ln_term += (j as f64).ln();
        }
        terms.push(ln_term);
    }
    Ok(log_sum_exp(terms))
}

/// Per-block bound values of one instance at one `ε`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockBound {
    pub block: Block,
    pub budget: u64,
    pub ln_power_bound: f64,
    pub ln_sum_bound: f64,
}

/// Both block bounds for every block of the partition of `{1, …, d}`.
pub fn block_bounds(instance: &ProblemInstance, eps: f64) -> Result<Vec<BlockBound>, BoundsError> {
    let partition = dyadic_partition(instance.d())?;
    partition
        .blocks
        .iter()
        .map(|b| {
            Ok(BlockBound {
                block: *b,
                budget: block_budget_a(instance, b, eps)?,
                ln_power_bound: block_bound_power(instance, b, eps)?,
                ln_sum_bound: block_bound_sum(instance, b, eps)?,
            })
        })
        .collect()
}

/// `ln ∏_i (block bound i) = Σ_i block_bound_power(i)`, summed in block order.
pub fn product_block_bound(instance: &ProblemInstance, eps: f64) -> Result<f64, BoundsError> {
    let partition = dyadic_partition(instance.d())?;
    let mut total = 0.0;
    for b in &partition.blocks {
        total += block_bound_power(instance, b, eps)?;
    }
    Ok(total)
}
