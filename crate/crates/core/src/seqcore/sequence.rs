use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeqError;
use crate::logvalue::{softplus, LogValue};

/// Whether a sequence holds univariate eigenvalues `λ_j` or coordinate weights `γ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Eigenvalues,
    Weights,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Eigenvalues => f.write_str("eigenvalues"),
            Role::Weights => f.write_str("weights"),
        }
    }
}

/// Continuation of an explicit list past its last stored entry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Tail {
    /// Every index after the list is exactly zero.
    Zero,
    /// `s_{J+m} = s_J · q^m`. Weights may use `q = 1` for a constant tail.
    Geometric { q: f64 },
}

/// Parametric families and explicit lists.
///
/// Eigenvalue families whose formula does not give 1 at `j = 1`
/// (`ExpPower`, `DoubleExp`) are pinned to `λ_1 = 1` and follow the formula
/// from `j = 2` on. Geometric eigenvalues are `q^{j-1}`, geometric weights `q^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `j^{-α}`
    Poly { alpha: f64 },
    /// `q^{j-1}` (eigenvalues) or `q^j` (weights)
    Geometric { q: f64 },
    /// `exp(-(ln j)^β)`, `β > 1`; eigenvalues only
    LogPower { beta: f64 },
    /// `exp(-c j^β)`
    ExpPower { c: f64, beta: f64 },
    /// `exp(-e^{c j})`
    DoubleExp { c: f64 },
    /// constant weight in `(0, 1]`
    Constant { value: f64 },
    /// explicit values for `j = 1..=J` followed by a tail rule
    List { values: Vec<f64>, tail: Tail },
}

impl Family {
    /// Short registry id used in configs and reports.
    pub fn id(&self) -> &'static str {
        match self {
            Family::Poly { .. } => "poly",
            Family::Geometric { .. } => "geometric",
            Family::LogPower { .. } => "logpower",
            Family::ExpPower { .. } => "exppower",
            Family::DoubleExp { .. } => "doubleexp",
            Family::Constant { .. } => "constant",
            Family::List { .. } => "list",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Poly { alpha } => write!(f, "poly(alpha={alpha})"),
            Family::Geometric { q } => write!(f, "geometric(q={q})"),
            Family::LogPower { beta } => write!(f, "logpower(beta={beta})"),
            Family::ExpPower { c, beta } => write!(f, "exppower(c={c},beta={beta})"),
            Family::DoubleExp { c } => write!(f, "doubleexp(c={c})"),
            Family::Constant { value } => write!(f, "constant(value={value})"),
            Family::List { values, tail } => {
                write!(f, "list(len={}", values.len())?;
                match tail {
                    Tail::Zero => write!(f, ",tail=zero)"),
                    Tail::Geometric { q } => write!(f, ",tail=geometric(q={q}))"),
                }
            }
        }
    }
}

/// A validated eigenvalue or weight sequence. Immutable once built.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceModel {
    role: Role,
    family: Family,
    /// For lists: stored log magnitudes, index 0 is `j = 1`.
    #[serde(skip)]
    ln_values: Vec<f64>,
}

fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

impl SequenceModel {
    pub fn new(role: Role, family: Family) -> Result<Self, SeqError> {
        let mut violations = Vec::new();
        let fam = &family;
        match (role, fam) {
            (_, Family::Poly { alpha }) => {
                if !positive_finite(*alpha) {
                    violations.push(format!("poly: alpha must be positive, got {alpha}"));
                }
            }
            (_, Family::Geometric { q }) => {
                if !(q.is_finite() && *q > 0.0 && *q < 1.0) {
                    violations.push(format!("geometric: q must lie in (0, 1), got {q}"));
                }
            }
            (Role::Eigenvalues, Family::LogPower { beta }) => {
                if !(beta.is_finite() && *beta > 1.0) {
                    violations.push(format!("logpower: beta must exceed 1, got {beta}"));
                }
            }
            (Role::Weights, Family::LogPower { .. }) => {
                violations.push("logpower is an eigenvalue family, not a weight family".into());
            }
            (_, Family::ExpPower { c, beta }) => {
                if !positive_finite(*c) {
                    violations.push(format!("exppower: c must be positive, got {c}"));
                }
                if !positive_finite(*beta) {
                    violations.push(format!("exppower: beta must be positive, got {beta}"));
                }
            }
            (_, Family::DoubleExp { c }) => {
                if !positive_finite(*c) {
                    violations.push(format!("doubleexp: c must be positive, got {c}"));
                }
            }
            (Role::Weights, Family::Constant { value }) => {
                if !(value.is_finite() && *value > 0.0 && *value <= 1.0) {
                    violations.push(format!("constant: weight must lie in (0, 1], got {value}"));
                }
            }
            (Role::Eigenvalues, Family::Constant { .. }) => {
                violations.push("constant eigenvalues do not tend to zero".into());
            }
            (_, Family::List { values, tail }) => {
                validate_list(role, values, *tail, &mut violations);
            }
        }
        if !violations.is_empty() {
            return Err(SeqError::InvalidModel(violations));
        }
        let ln_values = match &family {
            Family::List { values, .. } => values.iter().map(|v| v.ln()).collect(),
            _ => Vec::new(),
        };
        Ok(SequenceModel {
            role,
            family,
            ln_values,
        })
    }

    pub fn eigenvalues(family: Family) -> Result<Self, SeqError> {
        Self::new(Role::Eigenvalues, family)
    }

    pub fn weights(family: Family) -> Result<Self, SeqError> {
        Self::new(Role::Weights, family)
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `ln s_j` for `j ≥ 1`. Callers guarantee `j ≥ 1`.
    pub fn ln_at(&self, j: u64) -> f64 {
        debug_assert!(j >= 1);
        let eig = self.role == Role::Eigenvalues;
        let jf = j as f64;
        match &self.family {
            Family::Poly { alpha } => -alpha * jf.ln(),
            Family::Geometric { q } => {
                let power = if eig { jf - 1.0 } else { jf };
                if power == 0.0 {
                    0.0
                } else {
                    power * q.ln()
                }
            }
            Family::LogPower { beta } => {
                if j == 1 {
                    0.0
                } else {
                    -jf.ln().powf(*beta)
                }
            }
            Family::ExpPower { c, beta } => {
                if eig && j == 1 {
                    0.0
                } else {
                    -c * jf.powf(*beta)
                }
            }
            Family::DoubleExp { c } => {
                if eig && j == 1 {
                    0.0
                } else {
                    -(c * jf).exp()
                }
            }
            Family::Constant { value } => value.ln(),
            Family::List { tail, .. } => {
                let len = self.ln_values.len() as u64;
                if j <= len {
                    self.ln_values[(j - 1) as usize]
                } else {
                    let last = self.ln_values[self.ln_values.len() - 1];
                    match tail {
                        Tail::Zero => f64::NEG_INFINITY,
                        Tail::Geometric { q } => {
                            if *q == 1.0 {
                                last
                            } else {
                                last + (j - len) as f64 * q.ln()
                            }
                        }
                    }
                }
            }
        }
    }

    /// The sequence entry `s_j` as a [`LogValue`].
    pub fn eval(&self, j: u64) -> Result<LogValue, SeqError> {
        if j == 0 {
            return Err(SeqError::InvalidArgument(
                "sequence indices start at 1".into(),
            ));
        }
        Ok(LogValue::from_ln(self.ln_at(j)).unwrap_or(LogValue::ZERO))
    }

    /// Last index with a positive entry, when the sequence is eventually zero.
    pub fn zero_after(&self) -> Option<u64> {
        match &self.family {
            Family::List { tail, .. } => {
                if let Some(pos) = self.ln_values.iter().position(|v| *v == f64::NEG_INFINITY) {
                    return Some(pos as u64);
                }
                match tail {
                    Tail::Zero => Some(self.ln_values.len() as u64),
                    Tail::Geometric { .. } => None,
                }
            }
            _ => None,
        }
    }

    /// Natural log of `inf_j s_j`; `-inf` when the sequence tends to zero.
    pub fn ln_infimum(&self) -> f64 {
        match &self.family {
            Family::Constant { value } => value.ln(),
            Family::List {
                tail: Tail::Geometric { q },
                ..
            } if *q == 1.0 => self.ln_values[self.ln_values.len() - 1],
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn tends_to_zero(&self) -> bool {
        self.ln_infimum() == f64::NEG_INFINITY
    }

    /// Smallest `p ≤ limit` with `s_p < 1`, scanning or resolving analytically.
    pub fn first_index_below_one(&self, limit: u64) -> Option<u64> {
        if self.ln_infimum() == 0.0 {
            return None;
        }
        match &self.family {
            Family::List { .. } => (1..=limit).find(|&j| self.ln_at(j) < 0.0),
            _ => (1..=limit.min(2)).find(|&j| self.ln_at(j) < 0.0),
        }
    }

    /// `ln ln(1/s_j)` at the real index `j = e^ell`, `ell ≥ 0`.
    ///
    /// Parametric families use their continuous formula, so probes can reach
    /// indices far beyond `u64`. `+inf` marks a zero entry, `-inf` an entry of 1.
    pub fn ln_ln_recip_at(&self, ell: f64) -> f64 {
        let eig = self.role == Role::Eigenvalues;
        let pinned = eig && ell < std::f64::consts::LN_2;
        match &self.family {
            Family::Poly { alpha } => alpha.ln() + ell.ln(),
            Family::Geometric { q } => {
                let lq = (-q.ln()).ln();
                if eig {
                    if ell <= 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        // ln(e^ell - 1)
                        lq + ell + (-(-ell).exp()).ln_1p()
                    }
                } else {
                    lq + ell
                }
            }
            Family::LogPower { beta } => beta * ell.ln(),
            Family::ExpPower { c, beta } => {
                if pinned {
                    f64::NEG_INFINITY
                } else {
                    c.ln() + beta * ell
                }
            }
            Family::DoubleExp { c } => {
                if pinned {
                    f64::NEG_INFINITY
                } else {
                    c * ell.exp()
                }
            }
            Family::Constant { value } => (-value.ln()).ln(),
            Family::List { tail, .. } => {
                if ell <= 40.0 {
                    let j = (ell.exp().floor() as u64).max(1);
                    return (-self.ln_at(j)).ln();
                }
                match tail {
                    Tail::Zero => f64::INFINITY,
                    Tail::Geometric { .. } if self.zero_after().is_some() => f64::INFINITY,
                    Tail::Geometric { q } if *q == 1.0 => {
                        (-self.ln_values[self.ln_values.len() - 1]).ln()
                    }
                    Tail::Geometric { q } => {
                        let rate = -q.ln();
                        if ell < 700.0 {
                            let len = self.ln_values.len() as f64;
                            let base = -self.ln_values[self.ln_values.len() - 1];
                            (base + (ell.exp() - len) * rate).ln()
                        } else {
                            ell + rate.ln()
                        }
                    }
                }
            }
        }
    }

    /// Closed-form `ln ln x*`, where `x*` is the real index at which the
    /// continuous extension satisfies `ln(1/s(x*)) = e^w`.
    ///
    /// Threshold indices for thresholds far below any searchable range are
    /// read off this crossing. Returns `None` when the family declares no
    /// closed form or the crossing lies below 2.
    pub fn closed_form_ln_ln_index(&self, w: f64) -> Option<f64> {
        let eig = self.role == Role::Eigenvalues;
        let ln_x = match &self.family {
            Family::Poly { alpha } => return finite_above_ln2_lnln(w - alpha.ln()),
            Family::Geometric { q } => {
                let shifted = w - (-q.ln()).ln();
                if eig {
                    softplus(shifted)
                } else {
                    shifted
                }
            }
            Family::LogPower { beta } => return finite_above_ln2_lnln(w / beta),
            Family::ExpPower { c, beta } => (w - c.ln()) / beta,
            Family::DoubleExp { c } => (w / c).ln(),
            Family::Constant { .. } => return None,
            Family::List { tail, .. } => match tail {
                Tail::Zero => return None,
                Tail::Geometric { .. } if self.zero_after().is_some() => return None,
                Tail::Geometric { q } if *q == 1.0 => return None,
                Tail::Geometric { q } => {
                    let rate = -q.ln();
                    let len = self.ln_values.len() as f64;
                    let base = -self.ln_values[self.ln_values.len() - 1];
                    if w < 700.0 {
                        let target = w.exp();
                        if target <= base {
                            return None;
                        }
                        (len + (target - base) / rate).ln()
                    } else {
                        w - rate.ln()
                    }
                }
            },
        };
        if ln_x.is_finite() && ln_x > std::f64::consts::LN_2 {
            Some(ln_x.ln())
        } else {
            None
        }
    }

    /// Whether [`closed_form_ln_ln_index`](Self::closed_form_ln_ln_index) is available.
    pub fn has_closed_form(&self) -> bool {
        match &self.family {
            Family::Constant { .. } => false,
            Family::List { tail, .. } => {
                matches!(tail, Tail::Geometric { q } if *q < 1.0) && self.zero_after().is_none()
            }
            _ => true,
        }
    }
}

fn finite_above_ln2_lnln(ln_ln_x: f64) -> Option<f64> {
    // ln x > ln 2  <=>  ln ln x > ln ln 2
    if ln_ln_x.is_finite() && ln_ln_x > std::f64::consts::LN_2.ln() {
        Some(ln_ln_x)
    } else {
        None
    }
}

fn validate_list(role: Role, values: &[f64], tail: Tail, violations: &mut Vec<String>) {
    if values.is_empty() {
        violations.push("list: at least one value is required".into());
        return;
    }
    for (i, v) in values.iter().enumerate() {
        let j = i + 1;
        let ok = match role {
            Role::Eigenvalues => v.is_finite() && *v >= 0.0 && *v <= 1.0,
            Role::Weights => v.is_finite() && *v > 0.0 && *v <= 1.0,
        };
        if !ok {
            let range = if role == Role::Eigenvalues {
                "[0, 1]"
            } else {
                "(0, 1]"
            };
            violations.push(format!("list: value {v} at index {j} is outside {range}"));
        }
        if i > 0 && values[i] > values[i - 1] {
            violations.push(format!(
                "list: not non-increasing at index {j} ({} > {})",
                values[i],
                values[i - 1]
            ));
        }
    }
    if role == Role::Eigenvalues && values[0] != 1.0 {
        violations.push(format!("list: lambda_1 must equal 1, got {}", values[0]));
    }
    match (role, tail) {
        (Role::Weights, Tail::Zero) => {
            violations.push("list: weights must stay positive; a zero tail is not allowed".into())
        }
        (Role::Eigenvalues, Tail::Geometric { q }) => {
            if !(q.is_finite() && q > 0.0 && q < 1.0) {
                violations.push(format!(
                    "list: eigenvalue tail ratio must lie in (0, 1), got {q}"
                ));
            }
        }
        (Role::Weights, Tail::Geometric { q }) => {
            if !(q.is_finite() && q > 0.0 && q <= 1.0) {
                violations.push(format!(
                    "list: weight tail ratio must lie in (0, 1], got {q}"
                ));
            }
        }
        (Role::Eigenvalues, Tail::Zero) => {}
    }
}
