//! Per-notion classification of an eigenvalue/weight pair.

use serde::Serialize;

use super::criteria::{CatalogNotion, CriterionOutcome, NamedDiagnostic, TractContext};
use super::diagnostic::Thresholds;
use super::probes::{ClosedFormCheck, ProbeGrid};
use super::{TractError, Verdict};
use crate::seqcore::SequenceModel;

/// `(s, t)` pairs classified by default.
pub const DEFAULT_PAIRS: [(f64, f64); 9] = [
    (0.5, 0.5),
    (0.5, 1.0),
    (0.25, 0.75),
    (1.0, 0.5),
    (1.0, 1.0),
    (1.0, 2.0),
    (2.0, 0.5),
    (2.0, 2.0),
    (0.5, 2.0),
];

/// Exponents `δ` probed where a criterion holds "for every `δ > 0`".
pub const DEFAULT_DELTAS: [f64; 4] = [0.05, 0.1, 0.25, 0.5];

/// `s` values of the dimension/weight cross-check.
pub const CROSS_CHECK_S: [f64; 3] = [0.25, 0.5, 0.75];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyOptions {
    pub pairs: Vec<(f64, f64)>,
    /// `δ` of the sufficient corollary condition.
    pub corollary_delta: f64,
    /// Exponents probed by the "for every exponent" cross-checks.
    pub deltas: Vec<f64>,
    pub thresholds: Thresholds,
    pub grid: ProbeGrid,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            pairs: DEFAULT_PAIRS.to_vec(),
            corollary_delta: 0.5,
            deltas: DEFAULT_DELTAS.to_vec(),
            thresholds: Thresholds::default(),
            grid: ProbeGrid::default(),
        }
    }
}

impl ClassifyOptions {
    pub fn violations(&self) -> Vec<String> {
        let mut out = self.thresholds.violations();
        out.extend(self.grid.violations());
        for &(s, t) in &self.pairs {
            if !(s.is_finite() && s > 0.0 && t.is_finite() && t > 0.0) {
                out.push(format!("pair ({s}, {t}): s and t must be positive"));
            }
        }
        if !(self.corollary_delta.is_finite() && self.corollary_delta > 0.0) {
            out.push(format!(
                "corollary delta must be positive, got {}",
                self.corollary_delta
            ));
        }
        if self.deltas.is_empty() {
            out.push("at least one delta is required".into());
        }
        for &d in &self.deltas {
            if !(d.is_finite() && d > 0.0) {
                out.push(format!("delta must be positive, got {d}"));
            }
        }
        out
    }
}

/// How a notion's verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The weak-tractability theorem for `s < 1`, `t ≤ 1`.
    Theorem,
    /// A bullet of the regime catalog.
    Catalog,
    /// Follows from another entry.
    Derived,
    CorollaryNecessary,
    CorollarySufficient,
    /// Heuristic path family; never certifying.
    PathGrid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NotionEntry {
    pub notion: String,
    pub verdict: Verdict,
    pub method: Method,
    /// The verdict rests on a structural fact rather than a numeric limit.
    pub certifying: bool,
    pub criterion: String,
    /// Tail-maximum estimate of the limsup exponent (polynomial notions).
    pub exponent_estimate: Option<f64>,
    pub diagnostics: Vec<NamedDiagnostic>,
    pub notes: Vec<String>,
    pub s: Option<f64>,
    pub t: Option<f64>,
}

impl NotionEntry {
    fn from_outcome(
        notion: String,
        method: Method,
        criterion: String,
        o: CriterionOutcome,
    ) -> Self {
        NotionEntry {
            notion,
            verdict: o.verdict,
            method,
            certifying: false,
            criterion,
            exponent_estimate: None,
            diagnostics: o.diagnostics,
            notes: o.notes,
            s: None,
            t: None,
        }
    }

    fn with_params(mut self, s: f64, t: f64) -> Self {
        self.s = Some(s);
        self.t = Some(t);
        self
    }
}

/// Two verdicts that an equivalence between limit conditions forces to agree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub left: Verdict,
    pub right: Verdict,
    /// False only for a holds-versus-fails contradiction.
    pub consistent: bool,
}

impl CrossCheck {
    fn new(name: String, left: Verdict, right: Verdict) -> Self {
        let clash = matches!(
            (left, right),
            (Verdict::Holds, Verdict::Fails) | (Verdict::Fails, Verdict::Holds)
        );
        CrossCheck {
            name,
            left,
            right,
            consistent: !clash,
        }
    }

    /// Both sides decided and equal.
    pub fn decided_agreement(&self) -> bool {
        self.left == self.right && self.left != Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub lambdas: SequenceModel,
    pub gammas: SequenceModel,
    pub thresholds: Thresholds,
    pub grid: ProbeGrid,
    pub entries: Vec<NotionEntry>,
    pub cross_checks: Vec<CrossCheck>,
    pub lambda_closed_form_checks: Vec<ClosedFormCheck>,
    pub gamma_closed_form_checks: Vec<ClosedFormCheck>,
}

impl ClassificationReport {
    /// The first entry for `notion`, preferring non-heuristic methods.
    pub fn entry(&self, notion: &str) -> Option<&NotionEntry> {
        self.entries
            .iter()
            .filter(|e| e.notion == notion)
            .min_by_key(|e| e.method == Method::PathGrid)
    }

    pub fn verdict(&self, notion: &str) -> Option<Verdict> {
        self.entry(notion).map(|e| e.verdict)
    }

    /// Implications between notions that the verdicts contradict.
    /// Inconclusive verdicts never contradict anything.
    pub fn consistency_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let v = |n: &str| self.verdict(n);
        let implies = |a: &str, b: &str, out: &mut Vec<String>| {
            if v(a) == Some(Verdict::Holds) && v(b) == Some(Verdict::Fails) {
                out.push(format!("{a} holds but {b} fails"));
            }
        };
        implies("EXP-SPT", "EXP-PT", &mut out);
        implies("EXP-PT", "EXP-SPT", &mut out);
        implies("EXP-SPT", "EXP-QPT", &mut out);
        implies("EXP-QPT", "EXP-WT", &mut out);
        if v("EXP-UWT") == Some(Verdict::Holds) {
            for e in &self.entries {
                let binding = matches!(e.method, Method::Theorem | Method::Catalog);
                if binding && e.notion.ends_with("-WT") && e.verdict == Verdict::Fails {
                    out.push(format!("EXP-UWT holds but {} fails", e.notion));
                }
            }
        }
        out
    }
}

/// Classifies with [`ClassifyOptions::default`].
pub fn classify(
    lambdas: &SequenceModel,
    gammas: &SequenceModel,
) -> Result<ClassificationReport, TractError> {
    classify_with(lambdas, gammas, &ClassifyOptions::default())
}

pub fn classify_with(
    lambdas: &SequenceModel,
    gammas: &SequenceModel,
    options: &ClassifyOptions,
) -> Result<ClassificationReport, TractError> {
    let violations = options.violations();
    if !violations.is_empty() {
        return Err(TractError::InvalidArgument(violations.join("; ")));
    }
    let ctx = TractContext::new(lambdas, gammas, options.thresholds, options.grid)?;
    let mut entries = Vec::new();

    let catalog_entry = |notion: CatalogNotion| -> Result<NotionEntry, TractError> {
        let c = ctx.catalog(notion)?;
        let (s, t) = notion.parameters();
        let mut e =
            NotionEntry::from_outcome(notion.id(), Method::Catalog, notion.criterion(), c.outcome);
        e.certifying = c.structural_only;
        e.exponent_estimate = c.exponent_estimate;
        e.s = s;
        e.t = t;
        Ok(e)
    };

    let spt = catalog_entry(CatalogNotion::Spt)?;
    let mut pt = spt.clone();
    pt.notion = CatalogNotion::Pt.id();
    pt.method = Method::Derived;
    pt.notes.push("equivalent to EXP-SPT".into());
    entries.push(spt);
    entries.push(pt);
    entries.push(catalog_entry(CatalogNotion::Qpt)?);
    entries.push(catalog_entry(CatalogNotion::Wt)?);

    for &(s, t) in &options.pairs {
        match CatalogNotion::for_parameters(s, t, lambdas) {
            Some(CatalogNotion::Wt) => {} // already present as EXP-WT
            Some(notion) => entries.push(catalog_entry(notion)?),
            None => {
                let id = format!("EXP-({s},{t})-WT");
                let o = ctx.weak_criterion(s, t)?;
                entries.push(
                    NotionEntry::from_outcome(
                        id.clone(),
                        Method::Theorem,
                        "ln ln j(eps) / ln ln(1/eps) -> 0 and d(eps)^(1-s) ln j(eps) / (ln 1/eps)^s -> 0".into(),
                        o,
                    )
                    .with_params(s, t),
                );
                let (nec, suf) = ctx.decay_conditions(s, options.corollary_delta)?;
                let r = (1.0 - s) / s;
                entries.push(
                    NotionEntry::from_outcome(
                        id.clone(),
                        Method::CorollaryNecessary,
                        format!(
                            "ln ln(1/lambda_j) / ln ln j -> inf and ln(1/gamma_j) / j^{r} -> inf"
                        ),
                        nec,
                    )
                    .with_params(s, t),
                );
                entries.push(
                    NotionEntry::from_outcome(
                        id.clone(),
                        Method::CorollarySufficient,
                        format!(
                            "ln ln(1/lambda_j) / ln ln j -> inf and ln(1/gamma_j) / j^{} -> inf",
                            r + options.corollary_delta
                        ),
                        suf,
                    )
                    .with_params(s, t),
                );
                if t == 1.0 {
                    entries.push(
                        NotionEntry::from_outcome(
                            id,
                            Method::PathGrid,
                            "((ln 1/gamma_k)^s + (ln 1/lambda_j)^s) / (d^(1-s) ln j) -> inf".into(),
                            ctx.mixed_path_grid(s)?,
                        )
                        .with_params(s, t),
                    );
                }
            }
        }
    }

    entries.push(NotionEntry::from_outcome(
        "EXP-UWT".into(),
        Method::Theorem,
        "ln ln(1/lambda_j) / ln ln j -> inf and ln ln(1/gamma_j) / ln j -> inf".into(),
        ctx.uwt(),
    ));

    let report = ClassificationReport {
        lambdas: lambdas.clone(),
        gammas: gammas.clone(),
        thresholds: options.thresholds,
        grid: options.grid,
        entries,
        cross_checks: cross_checks(&ctx, &options.deltas),
        lambda_closed_form_checks: ctx.table.lambda_checks.clone(),
        gamma_closed_form_checks: ctx.table.gamma_checks.clone(),
    };
    let violations = report.consistency_violations();
    if !violations.is_empty() {
        return Err(TractError::Internal(violations));
    }
    Ok(report)
}

fn all_of(ds: impl IntoIterator<Item = NamedDiagnostic>) -> Verdict {
    Verdict::all(ds.into_iter().map(|d| d.verdict))
}

/// Equivalences between limit conditions, evaluated as paired diagnostics.
/// The weight-side checks apply to decaying weights only.
pub fn cross_checks(ctx: &TractContext, deltas: &[f64]) -> Vec<CrossCheck> {
    let mut out = Vec::new();
    let growth = ctx.index_growth().verdict;
    let decay = ctx.eigenvalue_doubly_log_decay().verdict;
    let power_growth = all_of(deltas.iter().map(|&d| ctx.index_power_growth(d)));
    out.push(CrossCheck::new(
        "index_growth ~ eigenvalue_doubly_log_decay".into(),
        growth,
        decay,
    ));
    out.push(CrossCheck::new(
        "index_growth ~ index_power_growth(all delta)".into(),
        growth,
        power_growth,
    ));
    out.push(CrossCheck::new(
        "eigenvalue_doubly_log_decay ~ eigenvalue_alpha_log_decay(all alpha)".into(),
        decay,
        all_of(deltas.iter().map(|&a| ctx.eigenvalue_alpha_log_decay(a))),
    ));
    if ctx.gammas.tends_to_zero() {
        for s in CROSS_CHECK_S {
            out.push(CrossCheck::new(
                format!("dimension_power_growth({s}) ~ weight_power_decay({s})"),
                ctx.dimension_power_growth(s).verdict,
                ctx.weight_power_decay(s).verdict,
            ));
        }
        out.push(CrossCheck::new(
            "weight_doubly_log_decay ~ weight_alpha_decay(all alpha)".into(),
            ctx.weight_doubly_log_decay().verdict,
            all_of(deltas.iter().map(|&a| ctx.weight_alpha_decay(a))),
        ));
    }
    out
}
