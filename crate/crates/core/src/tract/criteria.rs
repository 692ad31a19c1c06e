//! Tractability criteria as limit diagnostics.
//!
//! Two probe kinds exist. Sequence criteria walk `ln j = ℓ` and use
//! `K(ℓ) = ln ln(1/s_j)` at `j = e^ℓ`. Accuracy criteria walk
//! `v = ln ln ε⁻¹` and use `j(ε)`, `d(ε)` from the threshold table. Every
//! quotient below is written as `ln Q` in those variables.

use serde::Serialize;

use super::diagnostic::{assess, LimitDiagnostic, LimitVerdict, Sample, Thresholds};
use super::probes::{ProbeGrid, ThresholdProbe, ThresholdTable};
use super::{TractError, Verdict};
use crate::logvalue::log_add_exp;
use crate::seqcore::SequenceModel;

/// Limit a criterion asks of its quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Diverges,
    Vanishes,
    /// `limsup < ∞`
    BoundedAbove,
}

impl Expectation {
    pub fn judge(self, v: LimitVerdict) -> Verdict {
        use LimitVerdict as L;
        match (self, v) {
            (_, L::Inconclusive) => Verdict::Inconclusive,
            (Expectation::Diverges, L::Diverges) => Verdict::Holds,
            (Expectation::Diverges, _) => Verdict::Fails,
            (Expectation::Vanishes, L::Vanishes) => Verdict::Holds,
            (Expectation::Vanishes, _) => Verdict::Fails,
            (Expectation::BoundedAbove, L::Diverges) => Verdict::Fails,
            (Expectation::BoundedAbove, _) => Verdict::Holds,
        }
    }
}

/// Which grid a diagnostic walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// probe is `ln j`
    Index,
    /// probe is `ln ln ε⁻¹`
    Accuracy,
    /// probe is the path parameter `2^m`
    Path,
}

/// One quotient, its diagnostic and what the criterion needs of it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedDiagnostic {
    pub name: &'static str,
    pub quotient: String,
    pub probe: ProbeKind,
    pub expectation: Expectation,
    pub diagnostic: LimitDiagnostic,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub verdict: Verdict,
    pub diagnostics: Vec<NamedDiagnostic>,
    pub notes: Vec<String>,
}

impl CriterionOutcome {
    fn all(diagnostics: Vec<NamedDiagnostic>) -> Self {
        let verdict = Verdict::all(diagnostics.iter().map(|d| d.verdict));
        CriterionOutcome {
            verdict,
            diagnostics,
            notes: Vec::new(),
        }
    }

    pub fn diagnostic(&self, name: &str) -> Option<&NamedDiagnostic> {
        self.diagnostics.iter().find(|d| d.name == name)
    }
}

/// `ln x`, with every `x ≤ 0` sent to `-inf` (the quotient is not positive).
#[inline]
fn ln_pos(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        x.ln()
    }
}

fn valid_unit_open(name: &str, x: f64) -> Result<(), TractError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(TractError::InvalidArgument(format!(
            "{name} must lie in (0, 1), got {x}"
        )));
    }
    Ok(())
}

fn valid_positive(name: &str, x: f64) -> Result<(), TractError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(TractError::InvalidArgument(format!(
            "{name} must be positive, got {x}"
        )));
    }
    Ok(())
}

/// Evaluation context for one eigenvalue/weight pair.
pub struct TractContext {
    pub lambdas: SequenceModel,
    pub gammas: SequenceModel,
    pub thresholds: Thresholds,
    pub grid: ProbeGrid,
    pub table: ThresholdTable,
    j_probes: Vec<f64>,
    k_lambda: Vec<f64>,
    k_gamma: Vec<f64>,
}

impl TractContext {
    pub fn new(
        lambdas: &SequenceModel,
        gammas: &SequenceModel,
        thresholds: Thresholds,
        grid: ProbeGrid,
    ) -> Result<Self, TractError> {
        let mut violations = thresholds.violations();
        violations.extend(grid.violations());
        if lambdas.role() != crate::seqcore::Role::Eigenvalues {
            violations.push("first sequence must have the eigenvalue role".into());
        }
        if gammas.role() != crate::seqcore::Role::Weights {
            violations.push("second sequence must have the weight role".into());
        }
        if !violations.is_empty() {
            return Err(TractError::InvalidArgument(violations.join("; ")));
        }
        let j_probes = grid.j_probes();
        let k_lambda = j_probes
            .iter()
            .map(|&l| lambdas.ln_ln_recip_at(l))
            .collect();
        let k_gamma = j_probes.iter().map(|&l| gammas.ln_ln_recip_at(l)).collect();
        Ok(TractContext {
            lambdas: lambdas.clone(),
            gammas: gammas.clone(),
            thresholds,
            table: ThresholdTable::build(lambdas, gammas, &grid),
            grid,
            j_probes,
            k_lambda,
            k_gamma,
        })
    }

    pub fn with_defaults(
        lambdas: &SequenceModel,
        gammas: &SequenceModel,
    ) -> Result<Self, TractError> {
        Self::new(lambdas, gammas, Thresholds::default(), ProbeGrid::default())
    }

    fn named(
        &self,
        name: &'static str,
        quotient: String,
        probe: ProbeKind,
        expectation: Expectation,
        samples: Vec<Sample>,
    ) -> NamedDiagnostic {
        let diagnostic = assess(samples, &self.thresholds);
        NamedDiagnostic {
            name,
            quotient,
            probe,
            expectation,
            verdict: expectation.judge(diagnostic.verdict),
            diagnostic,
        }
    }

    /// Sequence quotient `ln Q = f(K, ℓ)` on the index grid.
    fn over_index(
        &self,
        name: &'static str,
        quotient: String,
        expectation: Expectation,
        weights: bool,
        f: impl Fn(f64, f64) -> f64,
    ) -> NamedDiagnostic {
        let ks = if weights {
            &self.k_gamma
        } else {
            &self.k_lambda
        };
        let samples = self
            .j_probes
            .iter()
            .zip(ks)
            .map(|(&ell, &k)| Sample {
                probe: ell,
                ln_quotient: Some(f(k, ell)).filter(|q| !q.is_nan()),
            })
            .collect();
        self.named(name, quotient, ProbeKind::Index, expectation, samples)
    }

    /// Accuracy quotient on the threshold table; `f` returns `None` for gaps.
    fn over_accuracy(
        &self,
        name: &'static str,
        quotient: String,
        expectation: Expectation,
        f: impl Fn(&ThresholdProbe) -> Option<f64>,
    ) -> NamedDiagnostic {
        let samples = self
            .table
            .probes
            .iter()
            .map(|p| Sample {
                probe: p.v,
                ln_quotient: f(p).filter(|q| !q.is_nan()),
            })
            .collect();
        self.named(name, quotient, ProbeKind::Accuracy, expectation, samples)
    }

    // ---- sequence quotients -------------------------------------------------

    /// `ln ln(1/λ_j) / ln ln j → ∞`. Eventually-zero eigenvalues satisfy it outright.
    pub fn eigenvalue_doubly_log_decay(&self) -> NamedDiagnostic {
        let mut d = self.over_index(
            "eigenvalue_doubly_log_decay",
            "ln ln(1/lambda_j) / ln ln j".into(),
            Expectation::Diverges,
            false,
            |k, ell| ln_pos(k) - ell.ln().ln(),
        );
        if self.lambdas.zero_after().is_some() {
            d.verdict = Verdict::Holds;
        }
        d
    }

    /// `ln(1/γ_j) / j^r → ∞`.
    fn weight_decay_against_power(&self, name: &'static str, r: f64) -> NamedDiagnostic {
        self.over_index(
            name,
            format!("ln(1/gamma_j) / j^{r}"),
            Expectation::Diverges,
            true,
            move |k, ell| k - r * ell,
        )
    }

    /// `ln ln(1/γ_j) / ln j → ∞`.
    pub fn weight_doubly_log_decay(&self) -> NamedDiagnostic {
        self.over_index(
            "weight_doubly_log_decay",
            "ln ln(1/gamma_j) / ln j".into(),
            Expectation::Diverges,
            true,
            |k, ell| ln_pos(k) - ell.ln(),
        )
    }

    /// `(ln 1/λ_j)^p / ln j → ∞`.
    fn eigenvalue_power_log_decay(&self, name: &'static str, p: f64) -> NamedDiagnostic {
        self.over_index(
            name,
            format!("(ln 1/lambda_j)^{p} / ln j"),
            Expectation::Diverges,
            false,
            move |k, ell| p * k - ell.ln(),
        )
    }

    /// `ln(1/λ_j) / ln j → ∞`.
    pub fn eigenvalue_log_decay(&self) -> NamedDiagnostic {
        self.eigenvalue_power_log_decay("eigenvalue_log_decay", 1.0)
    }

    /// `ln(1/γ_j) / ln j → ∞`.
    pub fn weight_log_decay(&self) -> NamedDiagnostic {
        self.over_index(
            "weight_log_decay",
            "ln(1/gamma_j) / ln j".into(),
            Expectation::Diverges,
            true,
            |k, ell| k - ell.ln(),
        )
    }

    /// `(ln 1/γ_j)^s / j^{1−s} → ∞`.
    pub fn weight_power_decay(&self, s: f64) -> NamedDiagnostic {
        self.over_index(
            "weight_power_decay",
            format!("(ln 1/gamma_j)^{s} / j^{}", 1.0 - s),
            Expectation::Diverges,
            true,
            move |k, ell| s * k - (1.0 - s) * ell,
        )
    }

    /// `(ln 1/λ_j)^α / ln j → ∞`.
    pub fn eigenvalue_alpha_log_decay(&self, alpha: f64) -> NamedDiagnostic {
        self.eigenvalue_power_log_decay("eigenvalue_alpha_log_decay", alpha)
    }

    /// `(ln 1/γ_j)^α / j → ∞`.
    pub fn weight_alpha_decay(&self, alpha: f64) -> NamedDiagnostic {
        self.over_index(
            "weight_alpha_decay",
            format!("(ln 1/gamma_j)^{alpha} / j"),
            Expectation::Diverges,
            true,
            move |k, ell| alpha * k - ell,
        )
    }

    // ---- accuracy quotients -------------------------------------------------

    /// `ln ln j(ε) / ln ln ε⁻¹ → 0`.
    pub fn index_growth(&self) -> NamedDiagnostic {
        self.over_accuracy(
            "index_growth",
            "ln ln j(eps) / ln ln(1/eps)".into(),
            Expectation::Vanishes,
            |p| Some(ln_pos(p.j_scale()?.ln_ln()?) - p.v.ln()),
        )
    }

    /// `d(ε)^{1−s} ln j(ε) / (ln ε⁻¹)^s → 0`.
    pub fn dimension_index_balance(&self, s: f64) -> NamedDiagnostic {
        self.over_accuracy(
            "dimension_index_balance",
            format!("d(eps)^{} ln j(eps) / (ln 1/eps)^{s}", 1.0 - s),
            Expectation::Vanishes,
            move |p| {
                let ld = p.d_scale()?.ln();
                let llj = p.j_scale()?.ln_ln()?;
                Some((1.0 - s) * ld + llj - s * p.v)
            },
        )
    }

    /// `ln j(ε) / (ln ε⁻¹)^δ → 0`.
    pub fn index_power_growth(&self, delta: f64) -> NamedDiagnostic {
        self.over_accuracy(
            "index_power_growth",
            format!("ln j(eps) / (ln 1/eps)^{delta}"),
            Expectation::Vanishes,
            move |p| Some(p.j_scale()?.ln_ln()? - delta * p.v),
        )
    }

    /// `d(ε)^{1−s} / (ln ε⁻¹)^s → 0`.
    pub fn dimension_power_growth(&self, s: f64) -> NamedDiagnostic {
        self.over_accuracy(
            "dimension_power_growth",
            format!("d(eps)^{} / (ln 1/eps)^{s}", 1.0 - s),
            Expectation::Vanishes,
            move |p| Some((1.0 - s) * p.d_scale()?.ln() - s * p.v),
        )
    }

    /// `d(ε) ln j(ε) / ln ln ε⁻¹`, bounded above.
    pub fn strong_polynomial_quotient(&self) -> NamedDiagnostic {
        self.over_accuracy(
            "strong_polynomial_quotient",
            "d(eps) ln j(eps) / ln ln(1/eps)".into(),
            Expectation::BoundedAbove,
            |p| Some(p.d_scale()?.ln() + p.j_scale()?.ln_ln()? - p.v.ln()),
        )
    }

    /// `d(ε) ln j(ε) / (ln d(ε) · ln ln ε⁻¹)`, bounded above; a gap where `d(ε) ≤ 1`.
    pub fn quasi_polynomial_quotient(&self) -> NamedDiagnostic {
        self.over_accuracy(
            "quasi_polynomial_quotient",
            "d(eps) ln j(eps) / (ln d(eps) ln ln(1/eps))".into(),
            Expectation::BoundedAbove,
            |p| {
                let ld = p.d_scale()?.ln();
                if ld.is_nan() || ld <= 0.0 {
                    return None;
                }
                // ln d − ln ln d, which stays +inf once ln d overflows
                let ratio = if ld.is_infinite() { ld } else { ld - ld.ln() };
                Some(ratio + p.j_scale()?.ln_ln()? - p.v.ln())
            },
        )
    }

    // ---- criteria -----------------------------------------------------------

    /// Weak tractability for `0 < s < 1`, `0 < t ≤ 1`: both
    /// `ln ln j(ε) / ln ln ε⁻¹ → 0` and `d(ε)^{1−s} ln j(ε) / (ln ε⁻¹)^s → 0`.
    pub fn weak_criterion(&self, s: f64, t: f64) -> Result<CriterionOutcome, TractError> {
        valid_unit_open("s", s)?;
        if !(t > 0.0 && t <= 1.0) {
            return Err(TractError::InvalidArgument(format!(
                "t must lie in (0, 1], got {t}"
            )));
        }
        Ok(CriterionOutcome::all(vec![
            self.index_growth(),
            self.dimension_index_balance(s),
        ]))
    }

    /// The necessary part (doubly-logarithmic eigenvalue decay and
    /// `ln(1/γ_j)/j^{(1−s)/s} → ∞`) and the sufficient part (the same with
    /// the exponent raised by `δ`).
    pub fn decay_conditions(
        &self,
        s: f64,
        delta: f64,
    ) -> Result<(CriterionOutcome, CriterionOutcome), TractError> {
        valid_unit_open("s", s)?;
        valid_positive("delta", delta)?;
        let r = (1.0 - s) / s;
        let necessary = CriterionOutcome::all(vec![
            self.eigenvalue_doubly_log_decay(),
            self.weight_decay_against_power("weight_decay_necessary", r),
        ]);
        let sufficient = CriterionOutcome::all(vec![
            self.eigenvalue_doubly_log_decay(),
            self.weight_decay_against_power("weight_decay_sufficient", r + delta),
        ]);
        Ok((necessary, sufficient))
    }

    /// Uniform weak tractability: doubly-logarithmic decay of both sequences.
    pub fn uwt(&self) -> CriterionOutcome {
        CriterionOutcome::all(vec![
            self.eigenvalue_doubly_log_decay(),
            self.weight_doubly_log_decay(),
        ])
    }

    fn weights_decay_entry(&self) -> CriterionOutcome {
        let tends = self.gammas.tends_to_zero();
        CriterionOutcome {
            verdict: if tends {
                Verdict::Holds
            } else {
                Verdict::Fails
            },
            diagnostics: Vec::new(),
            notes: vec![if tends {
                "weights tend to zero".into()
            } else {
                "weights do not tend to zero".into()
            }],
        }
    }

    /// One bullet of the tractability catalog.
    pub fn catalog(&self, notion: CatalogNotion) -> Result<CatalogOutcome, TractError> {
        notion.validate(&self.lambdas)?;
        let mut exponent_estimate = None;
        let mut structural_only = false;
        let outcome = match notion {
            CatalogNotion::Spt | CatalogNotion::Pt | CatalogNotion::Qpt => {
                let decay = self.weights_decay_entry();
                let diag = if notion == CatalogNotion::Qpt {
                    self.quasi_polynomial_quotient()
                } else {
                    self.strong_polynomial_quotient()
                };
                // a diverging quotient has no finite limsup to estimate
                if diag.diagnostic.verdict != LimitVerdict::Diverges {
                    exponent_estimate = diag.diagnostic.tail_max_ln.map(f64::exp);
                }
                let verdict = Verdict::all([decay.verdict, diag.verdict]);
                structural_only = decay.verdict == Verdict::Fails;
                let mut notes = decay.notes;
                if exponent_estimate.is_some() {
                    notes.push("exponent is the tail maximum of the quotient: an estimate of the limsup, not a certificate".into());
                }
                CriterionOutcome {
                    verdict,
                    diagnostics: vec![diag],
                    notes,
                }
            }
            CatalogNotion::Wt => {
                let decay = self.weights_decay_entry();
                let diag = self.eigenvalue_log_decay();
                structural_only = decay.verdict == Verdict::Fails;
                CriterionOutcome {
                    verdict: Verdict::all([decay.verdict, diag.verdict]),
                    diagnostics: vec![diag],
                    notes: decay.notes,
                }
            }
            CatalogNotion::OneTSmall { .. } => {
                CriterionOutcome::all(vec![self.weight_log_decay(), self.eigenvalue_log_decay()])
            }
            CatalogNotion::OneTLarge { .. } => {
                CriterionOutcome::all(vec![self.eigenvalue_log_decay()])
            }
            CatalogNotion::SLargeTSmall { s, .. } | CatalogNotion::SLargeTLarge { s, .. } => {
                CriterionOutcome::all(vec![
                    self.eigenvalue_power_log_decay("eigenvalue_power_log_decay", s)
                ])
            }
            CatalogNotion::SLargeTSmallUnitLambda2 { s, .. } => {
                let p = self.gammas.first_index_below_one(UNIT_WEIGHT_SCAN);
                let mut o = CriterionOutcome::all(vec![
                    self.eigenvalue_power_log_decay("eigenvalue_power_log_decay", s)
                ]);
                match p {
                    Some(p) => o.notes.push(format!("gamma_{p} < 1")),
                    None => {
                        o.verdict = Verdict::Fails;
                        structural_only = true;
                        o.notes.push(format!(
                            "no weight below 1 among the first {UNIT_WEIGHT_SCAN} indices"
                        ));
                    }
                }
                o
            }
            CatalogNotion::SSmallTLarge { s, t } => {
                let eta = s * (t - 1.0) / (t - s);
                let mut o = CriterionOutcome::all(vec![
                    self.eigenvalue_power_log_decay("eigenvalue_eta_log_decay", eta)
                ]);
                o.notes.push(format!("eta = {eta}"));
                o
            }
        };
        Ok(CatalogOutcome {
            outcome,
            exponent_estimate,
            structural_only,
        })
    }

    /// Heuristic, non-certifying evaluation of the mixed condition for
    /// `s < 1`, `t = 1` along a fixed family of paths; see [`MIXED_PATHS`].
    pub fn mixed_path_grid(&self, s: f64) -> Result<CriterionOutcome, TractError> {
        valid_unit_open("s", s)?;
        let probes: Vec<f64> = (1..=self.grid.j_levels)
            .map(|m| 2f64.powi(m as i32))
            .collect();
        let mut diagnostics = Vec::new();
        for path in MIXED_PATHS {
            let samples = probes
                .iter()
                .map(|&p| {
                    let (ln_k, ln_j, ln_d) = path.point(p);
                    let kg = self.gammas.ln_ln_recip_at(ln_k);
                    let kl = self.lambdas.ln_ln_recip_at(ln_j);
                    // ln[(ln 1/γ_k)^s + (ln 1/λ_j)^s] − (1−s) ln d − ln ln j
                    let q = log_add_exp(s * kg, s * kl) - (1.0 - s) * ln_d - ln_j.ln();
                    Sample {
                        probe: p,
                        ln_quotient: Some(q).filter(|q| !q.is_nan()),
                    }
                })
                .collect();
            diagnostics.push(self.named(
                path.name,
                format!(
                    "((ln 1/gamma_k)^{s} + (ln 1/lambda_j)^{s}) / (d^{} ln j) along {}",
                    1.0 - s,
                    path.description
                ),
                ProbeKind::Path,
                Expectation::Diverges,
                samples,
            ));
        }
        let mut outcome = CriterionOutcome::all(diagnostics);
        outcome
            .notes
            .push("heuristic over a finite path family; not a certificate".into());
        if self.lambdas.ln_at(2) > f64::NEG_INFINITY {
            outcome.notes.push(
                "lambda_2 > 0: along k = 1, j = 2, d -> inf the quotient decays like d^(s-1), so the condition cannot hold as stated; the theorem entry for this pair is authoritative".into(),
            );
        }
        Ok(outcome)
    }
}

/// Weight indices scanned for an entry below 1.
pub const UNIT_WEIGHT_SCAN: u64 = 1_000_000;

/// A path `(k, j, d)` through the mixed-condition parameter space, as logs.
pub struct MixedPath {
    pub name: &'static str,
    pub description: &'static str,
    point: fn(f64) -> (f64, f64, f64),
}

impl MixedPath {
    /// `(ln k, ln j, ln d)` at path parameter `p`.
    pub fn point(&self, p: f64) -> (f64, f64, f64) {
        (self.point)(p)
    }
}

/// The probed paths, each with parameter `p = 2^m`. Along every path
/// `d + γ_k^{-d} λ_j^{-d} → ∞`.
pub const MIXED_PATHS: [MixedPath; 5] = [
    MixedPath {
        name: "path_first_coordinate",
        description: "k = 1, j = 2, d = p",
        point: |p| (0.0, std::f64::consts::LN_2, p.ln()),
    },
    MixedPath {
        name: "path_last_coordinate",
        description: "k = d = p, j = 2",
        point: |p| (p.ln(), std::f64::consts::LN_2, p.ln()),
    },
    MixedPath {
        name: "path_index_only",
        description: "k = d = 1, ln j = p",
        point: |p| (0.0, p, 0.0),
    },
    MixedPath {
        name: "path_diagonal",
        description: "k = d = j = p",
        point: |p| (p.ln(), p.ln(), p.ln()),
    },
    MixedPath {
        name: "path_exponential_index",
        description: "k = d = p, ln j = p",
        point: |p| (p.ln(), p, p.ln()),
    },
];

/// Catalog bullets, each with the `(s, t)` regime it applies to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogNotion {
    Spt,
    Pt,
    Qpt,
    /// `s = t = 1`
    Wt,
    /// `s = 1`, `t < 1`
    OneTSmall {
        t: f64,
    },
    /// `s = 1`, `t > 1`
    OneTLarge {
        t: f64,
    },
    /// `s > 1`, `t ≤ 1`, `λ_2 < 1`
    SLargeTSmall {
        s: f64,
        t: f64,
    },
    /// `s > 1`, `t ≤ 1`, `λ_2 = 1`
    SLargeTSmallUnitLambda2 {
        s: f64,
        t: f64,
    },
    /// `s > 1`, `t > 1`
    SLargeTLarge {
        s: f64,
        t: f64,
    },
    /// `s < 1`, `t > 1`
    SSmallTLarge {
        s: f64,
        t: f64,
    },
}

impl CatalogNotion {
    /// The catalog bullet covering `(s, t)`, or `None` for `s < 1`, `t ≤ 1`
    /// (handled by the weak-tractability theorem).
    pub fn for_parameters(s: f64, t: f64, lambdas: &SequenceModel) -> Option<CatalogNotion> {
        let unit_lambda2 = lambdas.ln_at(2) == 0.0;
        if s == 1.0 && t == 1.0 {
            Some(CatalogNotion::Wt)
        } else if s == 1.0 && t < 1.0 {
            Some(CatalogNotion::OneTSmall { t })
        } else if s == 1.0 {
            Some(CatalogNotion::OneTLarge { t })
        } else if s > 1.0 && t <= 1.0 {
            if unit_lambda2 {
                Some(CatalogNotion::SLargeTSmallUnitLambda2 { s, t })
            } else {
                Some(CatalogNotion::SLargeTSmall { s, t })
            }
        } else if s > 1.0 {
            Some(CatalogNotion::SLargeTLarge { s, t })
        } else if t > 1.0 {
            Some(CatalogNotion::SSmallTLarge { s, t })
        } else {
            None
        }
    }

    pub fn parameters(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            CatalogNotion::Spt | CatalogNotion::Pt | CatalogNotion::Qpt => (None, None),
            CatalogNotion::Wt => (Some(1.0), Some(1.0)),
            CatalogNotion::OneTSmall { t } | CatalogNotion::OneTLarge { t } => (Some(1.0), Some(t)),
            CatalogNotion::SLargeTSmall { s, t }
            | CatalogNotion::SLargeTSmallUnitLambda2 { s, t }
            | CatalogNotion::SLargeTLarge { s, t }
            | CatalogNotion::SSmallTLarge { s, t } => (Some(s), Some(t)),
        }
    }

    /// Notion id used in reports.
    pub fn id(&self) -> String {
        match *self {
            CatalogNotion::Spt => "EXP-SPT".into(),
            CatalogNotion::Pt => "EXP-PT".into(),
            CatalogNotion::Qpt => "EXP-QPT".into(),
            CatalogNotion::Wt => "EXP-WT".into(),
            _ => {
                let (s, t) = self.parameters();
                format!("EXP-({},{})-WT", s.unwrap_or(1.0), t.unwrap_or(1.0))
            }
        }
    }

    /// The condition the bullet imposes, in words.
    pub fn criterion(&self) -> String {
        match *self {
            CatalogNotion::Spt | CatalogNotion::Pt => {
                "lambda_j, gamma_j -> 0 and limsup d(eps) ln j(eps) / ln ln(1/eps) < inf".into()
            }
            CatalogNotion::Qpt => {
                "lambda_j, gamma_j -> 0 and limsup d(eps) ln j(eps) / (ln d(eps) ln ln(1/eps)) < inf".into()
            }
            CatalogNotion::Wt => "gamma_j -> 0 and ln(1/lambda_j) / ln j -> inf".into(),
            CatalogNotion::OneTSmall { .. } => {
                "ln(1/gamma_j) / ln j -> inf and ln(1/lambda_j) / ln j -> inf".into()
            }
            CatalogNotion::OneTLarge { .. } => "ln(1/lambda_j) / ln j -> inf; weights arbitrary".into(),
            CatalogNotion::SLargeTSmall { s, .. } | CatalogNotion::SLargeTLarge { s, .. } => {
                format!("(ln 1/lambda_j)^{s} / ln j -> inf; weights arbitrary")
            }
            CatalogNotion::SLargeTSmallUnitLambda2 { s, .. } => {
                format!("some gamma_p < 1 and (ln 1/lambda_j)^{s} / ln j -> inf")
            }
            CatalogNotion::SSmallTLarge { s, t } => {
                format!("(ln 1/lambda_j)^eta / ln j -> inf, eta = {}", s * (t - 1.0) / (t - s))
            }
        }
    }

    fn validate(&self, lambdas: &SequenceModel) -> Result<(), TractError> {
        let bad = |msg: String| Err(TractError::InvalidArgument(msg));
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let (s, t) = self.parameters();
        if let (Some(s), Some(t)) = (s, t) {
            if !positive(s) || !positive(t) {
                return bad(format!("s and t must be positive, got ({s}, {t})"));
            }
        }
        let unit_lambda2 = lambdas.ln_at(2) == 0.0;
        match *self {
            CatalogNotion::OneTSmall { t } if t >= 1.0 => {
                bad(format!("this bullet needs t < 1, got {t}"))
            }
            CatalogNotion::OneTLarge { t } if t <= 1.0 => {
                bad(format!("this bullet needs t > 1, got {t}"))
            }
            CatalogNotion::SLargeTSmall { s, t }
            | CatalogNotion::SLargeTSmallUnitLambda2 { s, t }
                if s <= 1.0 || t > 1.0 =>
            {
                bad(format!(
                    "this bullet needs s > 1 and t <= 1, got ({s}, {t})"
                ))
            }
            CatalogNotion::SLargeTSmall { .. } if unit_lambda2 => {
                bad("this bullet needs lambda_2 < 1; use the lambda_2 = 1 bullet".into())
            }
            CatalogNotion::SLargeTSmallUnitLambda2 { .. } if !unit_lambda2 => {
                bad("this bullet needs lambda_2 = 1".into())
            }
            CatalogNotion::SLargeTLarge { s, t } if s <= 1.0 || t <= 1.0 => {
                bad(format!("this bullet needs s > 1 and t > 1, got ({s}, {t})"))
            }
            CatalogNotion::SSmallTLarge { s, t } if s >= 1.0 || t <= 1.0 => {
                bad(format!("this bullet needs s < 1 and t > 1, got ({s}, {t})"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogOutcome {
    pub outcome: CriterionOutcome,
    /// Tail-maximum estimate of the limsup exponent, for the polynomial notions.
    pub exponent_estimate: Option<f64>,
    /// The verdict was decided by a structural condition alone.
    pub structural_only: bool,
}
