//! Threshold indices at accuracies far beyond double precision.
//!
//! The tractability limits involve `ln ln j(ε)` against `ln ln ε⁻¹`, which
//! move only after `ε` has left the range of any floating-point type. Probes
//! are therefore parameterised by `v = ln ln ε⁻¹`: the threshold is
//! `ln ε⁻² = 2e^v`, and indices are carried as `ln ln j`. Where the
//! threshold is representable the index comes from the exact search;
//! beyond that it comes from the family's closed-form crossing, which is
//! checked against the search at random probes first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::seqcore::{threshold_index, IndexBound, SeqError, SequenceModel};

/// Threshold index on a doubly-logarithmic scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "ln_ln", rename_all = "snake_case")]
pub enum IndexScale {
    Zero,
    One,
    /// `ln ln n` for an index `n ≥ 2`.
    LnLn(f64),
    Infinite,
}

impl IndexScale {
    pub fn from_count(n: u64) -> Self {
        match n {
            0 => IndexScale::Zero,
            1 => IndexScale::One,
            _ => IndexScale::LnLn((n as f64).ln().ln()),
        }
    }

    fn from_bound(b: IndexBound) -> Self {
        match b {
            IndexBound::Finite(n) => Self::from_count(n),
            IndexBound::Infinite => IndexScale::Infinite,
        }
    }

    /// `ln n`: `-inf` for `n = 0`, `0` for `n = 1`.
    pub fn ln(self) -> f64 {
        match self {
            IndexScale::Zero => f64::NEG_INFINITY,
            IndexScale::One => 0.0,
            IndexScale::LnLn(x) => x.exp(),
            IndexScale::Infinite => f64::INFINITY,
        }
    }

    /// `ln ln n`; `None` for `n = 0`, `-inf` for `n = 1`.
    pub fn ln_ln(self) -> Option<f64> {
        match self {
            IndexScale::Zero => None,
            IndexScale::One => Some(f64::NEG_INFINITY),
            IndexScale::LnLn(x) => Some(x),
            IndexScale::Infinite => Some(f64::INFINITY),
        }
    }
}

/// How an index value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexSource {
    Search,
    ClosedForm,
}

/// Probe grids, as exponents of 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeGrid {
    /// Accuracy probes use `ln ln ε⁻¹ = 2^k` for `k = 1..=eps_levels`.
    pub eps_levels: u32,
    /// Sequence probes use `ln j = 2^k` for `k = 1..=j_levels`.
    pub j_levels: u32,
    /// Seed for the closed-form cross-check probes.
    pub seed: u64,
}

impl Default for ProbeGrid {
    fn default() -> Self {
        ProbeGrid {
            eps_levels: 40,
            j_levels: 40,
            seed: 0x5eed,
        }
    }
}

impl ProbeGrid {
    pub fn eps_probes(&self) -> Vec<f64> {
        super::geometric_probes(self.eps_levels)
    }

    pub fn j_probes(&self) -> Vec<f64> {
        super::geometric_probes(self.j_levels)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [("eps_levels", self.eps_levels), ("j_levels", self.j_levels)] {
            if !(2..=60).contains(&v) {
                out.push(format!("{name} must lie in 2..=60, got {v}"));
            }
        }
        out
    }
}

/// `ln(-ln threshold)` for the accuracy probe `v`: `ln ε⁻² = 2e^v`.
pub fn ln_threshold_magnitude(v: f64) -> f64 {
    std::f64::consts::LN_2 + v
}

/// Index `max{n : s_n > e^{-e^w}}` on the doubly-logarithmic scale.
pub fn index_at(model: &SequenceModel, w: f64) -> Result<(IndexScale, IndexSource), SeqError> {
    let ln_threshold = -w.exp();
    if model.ln_infimum() > ln_threshold {
        return Ok((IndexScale::Infinite, IndexSource::Search));
    }
    if ln_threshold.is_finite() || model.zero_after().is_some() {
        match threshold_index(model, ln_threshold) {
            Ok(b) => return Ok((IndexScale::from_bound(b), IndexSource::Search)),
            Err(SeqError::RangeExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if !model.has_closed_form() {
        return Err(SeqError::RangeExceeded { ln_threshold });
    }
    let scale = match model.closed_form_ln_ln_index(w) {
        Some(x) => IndexScale::LnLn(x),
        // the crossing lies below 2
        None if model.ln_at(1) > ln_threshold => IndexScale::One,
        None => IndexScale::Zero,
    };
    Ok((scale, IndexSource::ClosedForm))
}

/// One comparison of the closed form against the search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedFormCheck {
    pub w: f64,
    pub search: u64,
    /// Real-valued crossing `x*`.
    pub closed_form: f64,
    pub agrees: bool,
}

/// Number of closed-form cross-checks per sequence.
pub const CLOSED_FORM_CHECKS: usize = 5;

/// Compares the closed-form crossing with the exact search at
/// [`CLOSED_FORM_CHECKS`] random thresholds inside the searchable range.
/// Agreement means `|search − x*| ≤ 1 + 10^{-9} x*`.
pub fn cross_check_closed_form(model: &SequenceModel, seed: u64) -> Vec<ClosedFormCheck> {
    if !model.has_closed_form() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for _ in 0..200 {
        if checks.len() == CLOSED_FORM_CHECKS {
            break;
        }
        let w: f64 = rng.gen_range(-1.0..5.0);
        let Ok(IndexBound::Finite(n)) = threshold_index(model, -w.exp()) else {
            continue;
        };
        let Some(lnln) = model.closed_form_ln_ln_index(w) else {
            continue;
        };
        let x = lnln.exp().exp();
        if !x.is_finite() || n < 2 {
            continue;
        }
        let agrees = ((n as f64) - x).abs() <= 1.0 + 1e-9 * x;
        checks.push(ClosedFormCheck {
            w,
            search: n,
            closed_form: x,
            agrees,
        });
    }
    checks
}

/// `j(ε)` and `d(ε)` at one accuracy probe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdProbe {
    /// `ln ln ε⁻¹`.
    pub v: f64,
    pub j: Option<(IndexScale, IndexSource)>,
    pub d: Option<(IndexScale, IndexSource)>,
}

impl ThresholdProbe {
    pub fn j_scale(&self) -> Option<IndexScale> {
        self.j.map(|(s, _)| s)
    }

    pub fn d_scale(&self) -> Option<IndexScale> {
        self.d.map(|(s, _)| s)
    }
}

/// Both threshold indices along the accuracy grid. A failed evaluation, or
/// a closed form that failed its cross-check, leaves a gap.
pub struct ThresholdTable {
    pub probes: Vec<ThresholdProbe>,
    pub lambda_checks: Vec<ClosedFormCheck>,
    pub gamma_checks: Vec<ClosedFormCheck>,
}

impl ThresholdTable {
    pub fn build(lambdas: &SequenceModel, gammas: &SequenceModel, grid: &ProbeGrid) -> Self {
        let lambda_checks = cross_check_closed_form(lambdas, grid.seed);
        let gamma_checks = cross_check_closed_form(gammas, grid.seed.wrapping_add(1));
        let lambda_ok = lambda_checks.iter().all(|c| c.agrees);
        let gamma_ok = gamma_checks.iter().all(|c| c.agrees);
        let take = |model: &SequenceModel, ok: bool, w: f64| match index_at(model, w) {
            Ok((_, IndexSource::ClosedForm)) if !ok => None,
            Ok(x) => Some(x),
            Err(_) => None,
        };
        let probes = grid
            .eps_probes()
            .into_iter()
            .map(|v| {
                let w = ln_threshold_magnitude(v);
                ThresholdProbe {
                    v,
                    j: take(lambdas, lambda_ok, w),
                    d: take(gammas, gamma_ok, w),
                }
            })
            .collect();
        ThresholdTable {
            probes,
            lambda_checks,
            gamma_checks,
        }
    }

    pub fn v_values(&self) -> Vec<f64> {
        self.probes.iter().map(|p| p.v).collect()
    }
}
