//! Numeric surrogate for a limit: sample a quotient along an increasing probe
//! grid and read a verdict off the tail of the samples.
//!
//! Quotients are handled by their natural logarithm so that values like
//! `e^{10^6}` and `e^{-10^6}` stay comparable. A quotient of zero is `-inf`,
//! an infinite quotient is `+inf`.

use serde::{Deserialize, Serialize};

use super::TractError;

/// Verdict thresholds. Every numeric verdict depends on these, so they are
/// reported alongside the verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// Tail values above this count as divergent.
    pub t_div: f64,
    /// Tail values below this count as vanishing.
    pub t_van: f64,
    /// Fraction of the valid samples that forms the tail window.
    pub tail_fraction: f64,
    /// Relative step tolerated against the monotone direction.
    pub monotone_slack: f64,
    /// Fewest valid samples for a verdict other than inconclusive.
    pub min_probes: usize,
    /// Largest tolerated fraction of failed probe evaluations.
    pub max_gap_fraction: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            t_div: 1e3,
            t_van: 1e-3,
            tail_fraction: 1.0 / 3.0,
            monotone_slack: 0.05,
            min_probes: 8,
            max_gap_fraction: 0.25,
        }
    }
}

impl Thresholds {
    /// Every out-of-range field, described.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.t_van > 0.0 && self.t_van < 1.0) {
            out.push(format!("t_van must lie in (0, 1), got {}", self.t_van));
        }
        if !(self.t_div.is_finite() && self.t_div > 1.0) {
            out.push(format!(
                "t_div must be finite and exceed 1, got {}",
                self.t_div
            ));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            out.push(format!(
                "tail_fraction must lie in (0, 1], got {}",
                self.tail_fraction
            ));
        }
        if !(self.monotone_slack >= 0.0 && self.monotone_slack < 1.0) {
            out.push(format!(
                "monotone_slack must lie in [0, 1), got {}",
                self.monotone_slack
            ));
        }
        if self.min_probes < 2 {
            out.push(format!(
                "min_probes must be at least 2, got {}",
                self.min_probes
            ));
        }
        if !(0.0..=1.0).contains(&self.max_gap_fraction) {
            out.push(format!(
                "max_gap_fraction must lie in [0, 1], got {}",
                self.max_gap_fraction
            ));
        }
        out
    }
}

/// Limit behaviour read off the tail window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitVerdict {
    Diverges,
    Vanishes,
    BoundedPositive,
    Inconclusive,
}

impl std::fmt::Display for LimitVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LimitVerdict::Diverges => "diverges",
            LimitVerdict::Vanishes => "vanishes",
            LimitVerdict::BoundedPositive => "bounded_positive",
            LimitVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// One probe and the log of the quotient there; `None` marks a gap.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub probe: f64,
    pub ln_quotient: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitDiagnostic {
    pub samples: Vec<Sample>,
    pub verdict: LimitVerdict,
    /// Least-squares slope of `ln Q` against `ln probe` over the tail, when
    /// every tail value is finite.
    pub trend_slope: Option<f64>,
    pub gaps: usize,
    /// Largest `ln Q` over the tail window.
    pub tail_max_ln: Option<f64>,
}

impl LimitDiagnostic {
    /// Samples that were evaluated successfully, in probe order.
    pub fn valid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .filter_map(|s| s.ln_quotient.map(|q| (s.probe, q)))
    }
}

fn check_probes(probes: &[f64], thresholds: &Thresholds) -> Result<(), TractError> {
    if probes.len() < thresholds.min_probes {
        return Err(TractError::InvalidArgument(format!(
            "need at least {} probes, got {}",
            thresholds.min_probes,
            probes.len()
        )));
    }
    if probes
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(TractError::InvalidArgument(
            "probes must be strictly increasing".into(),
        ));
    }
    if probes.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
        return Err(TractError::InvalidArgument(
            "probes must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Diagnostic of a quotient given directly; nonpositive values map to `ln Q = -inf`.
pub fn limit_diagnostic<F>(
    quotient: F,
    probes: &[f64],
    thresholds: &Thresholds,
) -> Result<LimitDiagnostic, TractError>
where
    F: Fn(f64) -> Option<f64>,
{
    limit_diagnostic_ln(
        |p| {
            quotient(p).filter(|q| !q.is_nan()).map(|q| {
                if q <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    q.ln()
                }
            })
        },
        probes,
        thresholds,
    )
}

/// Diagnostic of a quotient given by its logarithm. `None` or NaN at a probe is a gap.
pub fn limit_diagnostic_ln<F>(
    ln_quotient: F,
    probes: &[f64],
    thresholds: &Thresholds,
) -> Result<LimitDiagnostic, TractError>
where
    F: Fn(f64) -> Option<f64>,
{
    check_probes(probes, thresholds)?;
    let samples: Vec<Sample> = probes
        .iter()
        .map(|&probe| Sample {
            probe,
            ln_quotient: ln_quotient(probe).filter(|q| !q.is_nan()),
        })
        .collect();
    Ok(assess(samples, thresholds))
}

/// Builds the diagnostic from pre-computed samples.
pub fn assess(samples: Vec<Sample>, thresholds: &Thresholds) -> LimitDiagnostic {
    let gaps = samples.iter().filter(|s| s.ln_quotient.is_none()).count();
    let valid: Vec<(f64, f64)> = samples
        .iter()
        .filter_map(|s| s.ln_quotient.map(|q| (s.probe, q)))
        .collect();
    let gap_fraction = if samples.is_empty() {
        1.0
    } else {
        gaps as f64 / samples.len() as f64
    };
    if gap_fraction > thresholds.max_gap_fraction || valid.len() < thresholds.min_probes {
        return LimitDiagnostic {
            samples,
            verdict: LimitVerdict::Inconclusive,
            trend_slope: None,
            gaps,
            tail_max_ln: None,
        };
    }
    let tail_len =
        ((valid.len() as f64 * thresholds.tail_fraction).ceil() as usize).clamp(2, valid.len());
    let tail = &valid[valid.len() - tail_len..];
    let ln_div = thresholds.t_div.ln();
    let ln_van = thresholds.t_van.ln();
    let down_step = (1.0 - thresholds.monotone_slack).ln();
    let up_step = (1.0 + thresholds.monotone_slack).ln();
    let increasing = tail.windows(2).all(|w| w[1].1 >= w[0].1 + down_step);
    let decreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 + up_step);
    let verdict = if increasing && tail.iter().all(|(_, q)| *q > ln_div) {
        LimitVerdict::Diverges
    } else if decreasing && tail.iter().all(|(_, q)| *q < ln_van) {
        LimitVerdict::Vanishes
    } else if tail.iter().all(|(_, q)| *q >= ln_van && *q <= ln_div) {
        LimitVerdict::BoundedPositive
    } else {
        LimitVerdict::Inconclusive
    };
    let tail_max_ln = tail
        .iter()
        .map(|(_, q)| *q)
        .fold(f64::NEG_INFINITY, f64::max);
    LimitDiagnostic {
        trend_slope: slope(tail),
        samples,
        verdict,
        gaps,
        tail_max_ln: Some(tail_max_ln),
    }
}

fn slope(tail: &[(f64, f64)]) -> Option<f64> {
    if tail.iter().any(|(_, q)| !q.is_finite()) {
        return None;
    }
    let n = tail.len() as f64;
    let xs: Vec<f64> = tail.iter().map(|(p, _)| p.ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = tail.iter().map(|(_, q)| q).sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs
        .iter()
        .zip(tail)
        .map(|(x, (_, y))| (x - mean_x) * (y - mean_y))
        .sum();
    Some(sxy / sxx)
}

/// `2^1, …, 2^n`.
pub fn geometric_probes(levels: u32) -> Vec<f64> {
    (1..=levels).map(|k| 2f64.powi(k as i32)).collect()
}
