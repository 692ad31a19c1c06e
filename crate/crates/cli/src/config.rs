//! Run configuration: a TOML file with a fixed schema.
//!
//! ```toml
//! command = "count"          # count | bounds | classify | sweep | thresholds
//! cap = 1000000              # optional node cap for exact counts
//! output = "out.csv"         # optional; stdout when absent
//! require_exact = false      # exit with status 3 if any count hits the cap
//!
//! [instance]
//! d = 2
//! lambda = { family = "geometric", q = 0.5 }
//! gamma = { family = "geometric", q = 0.5 }
//!
//! [grids]
//! epsilon = [0.5, 0.25]      # or epsilon_min / epsilon_max / epsilon_points
//! d = [1, 2, 3]              # defaults to [instance.d]
//!
//! [classify]
//! s = 0.5
//! t = 1.0
//! delta = 0.5
//!
//! [thresholds]
//! t_div = 1000.0
//! ```
//!
//! Every problem is collected before anything runs, and reported together.

use std::path::{Path, PathBuf};

use exptract::seqcore::{load_list_file, Family, Role, SequenceModel, Tail};
use exptract::tract::{ClassifyOptions, ProbeGrid, Thresholds};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Count,
    Bounds,
    Classify,
    Sweep,
    Thresholds,
}

/// A sequence as written in the config: a family id plus its parameters.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: String,
    pub alpha: Option<f64>,
    pub q: Option<f64>,
    pub beta: Option<f64>,
    pub c: Option<f64>,
    pub value: Option<f64>,
    /// Explicit list values, for `family = "list"`.
    pub values: Option<Vec<f64>>,
    /// `"zero"` or `"geometric"` (with `tail_q`), for inline lists.
    pub tail: Option<String>,
    pub tail_q: Option<f64>,
    /// List file, relative to the config file.
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSection {
    pub d: Option<u64>,
    pub lambda: Option<FamilySpec>,
    pub gamma: Option<FamilySpec>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridsSection {
    pub epsilon: Option<Vec<f64>>,
    pub epsilon_min: Option<f64>,
    pub epsilon_max: Option<f64>,
    pub epsilon_points: Option<usize>,
    pub d: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifySection {
    pub s: Option<f64>,
    pub t: Option<f64>,
    pub delta: Option<f64>,
    pub pairs: Option<Vec<(f64, f64)>>,
    pub deltas: Option<Vec<f64>>,
    pub eps_levels: Option<u32>,
    pub j_levels: Option<u32>,
    pub seed: Option<u64>,
}

/// The file as parsed, before validation.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub command: Command,
    pub cap: Option<u64>,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub require_exact: bool,
    pub instance: InstanceSection,
    #[serde(default)]
    pub grids: GridsSection,
    #[serde(default)]
    pub classify: ClassifySection,
    #[serde(default)]
    pub thresholds: Thresholds,
}

/// A fully validated run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub cap: u64,
    pub output: Option<PathBuf>,
    pub require_exact: bool,
    pub lambdas: SequenceModel,
    pub gammas: SequenceModel,
    pub epsilons: Vec<f64>,
    pub dims: Vec<u64>,
    pub classify: ClassifyOptions,
}

/// Overrides from the command line; they win over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub cap: Option<u64>,
}

/// Log-spaced grid from `max` down to `min`, both included.
pub fn log_grid(max: f64, min: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![max];
    }
    let (a, b) = (max.ln(), min.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                max
            } else if i == points - 1 {
                min
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

fn need(name: &str, role: &str, x: Option<f64>, errors: &mut Vec<String>) -> f64 {
    x.unwrap_or_else(|| {
        errors.push(format!("{role}: family needs `{name}`"));
        f64::NAN
    })
}

fn build_model(
    role: Role,
    spec: &FamilySpec,
    base: &Path,
    errors: &mut Vec<String>,
) -> Option<SequenceModel> {
    let label = match role {
        Role::Eigenvalues => "instance.lambda",
        Role::Weights => "instance.gamma",
    };
    let mut local = Vec::new();
    let e = &mut local;
    let unused = |name: &str, present: bool, e: &mut Vec<String>| {
        if present {
            e.push(format!(
                "{label}: `{name}` does not apply to family `{}`",
                spec.family
            ));
        }
    };
    let family = match spec.family.as_str() {
        "poly" => Family::Poly {
            alpha: need("alpha", label, spec.alpha, e),
        },
        "geometric" => Family::Geometric {
            q: need("q", label, spec.q, e),
        },
        "logpower" => Family::LogPower {
            beta: need("beta", label, spec.beta, e),
        },
        "exppower" => Family::ExpPower {
            c: need("c", label, spec.c, e),
            beta: need("beta", label, spec.beta, e),
        },
        "doubleexp" => Family::DoubleExp {
            c: need("c", label, spec.c, e),
        },
        "constant" => Family::Constant {
            value: need("value", label, spec.value, e),
        },
        "list" => {
            if let Some(file) = &spec.file {
                unused("values", spec.values.is_some(), e);
                unused("tail", spec.tail.is_some(), e);
                unused("tail_q", spec.tail_q.is_some(), e);
                let path = base.join(file);
                if !e.is_empty() {
                    errors.append(e);
                    return None;
                }
                return match load_list_file(role, &path) {
                    Ok(m) => Some(m),
                    Err(err) => {
                        errors.push(format!("{label}: {err}"));
                        None
                    }
                };
            }
            let values = spec.values.clone().unwrap_or_else(|| {
                e.push(format!("{label}: a list needs `values` or `file`"));
                Vec::new()
            });
            let tail = match (spec.tail.as_deref(), spec.tail_q) {
                (Some("zero"), None) => Tail::Zero,
                (Some("geometric"), Some(q)) => Tail::Geometric { q },
                (Some("geometric"), None) => {
                    e.push(format!("{label}: geometric tail needs `tail_q`"));
                    Tail::Zero
                }
                (Some("zero"), Some(_)) => {
                    e.push(format!("{label}: `tail_q` does not apply to a zero tail"));
                    Tail::Zero
                }
                (Some(other), _) => {
                    e.push(format!(
                        "{label}: unknown tail `{other}` (expected zero or geometric)"
                    ));
                    Tail::Zero
                }
                (None, _) => {
                    e.push(format!("{label}: a list needs `tail`"));
                    Tail::Zero
                }
            };
            Family::List { values, tail }
        }
        other => {
            errors.push(format!(
                "{label}: unknown family `{other}` (expected poly, geometric, logpower, exppower, doubleexp, constant or list)"
            ));
            return None;
        }
    };
    if spec.family != "list" {
        unused("values", spec.values.is_some(), e);
        unused("tail", spec.tail.is_some(), e);
        unused("tail_q", spec.tail_q.is_some(), e);
        unused("file", spec.file.is_some(), e);
    }
    let used: &[&str] = match spec.family.as_str() {
        "poly" => &["alpha"],
        "geometric" => &["q"],
        "logpower" => &["beta"],
        "exppower" => &["c", "beta"],
        "doubleexp" => &["c"],
        "constant" => &["value"],
        _ => &[],
    };
    for (name, present) in [
        ("alpha", spec.alpha.is_some()),
        ("q", spec.q.is_some()),
        ("beta", spec.beta.is_some()),
        ("c", spec.c.is_some()),
        ("value", spec.value.is_some()),
    ] {
        if !used.contains(&name) {
            unused(name, present, e);
        }
    }
    if !e.is_empty() {
        errors.append(e);
        return None;
    }
    match SequenceModel::new(role, family) {
        Ok(m) => Some(m),
        Err(err) => {
            errors.push(format!("{label}: {err}"));
            None
        }
    }
}

impl RunConfig {
    /// Parses and validates; `base` resolves relative list files.
    pub fn from_toml(
        text: &str,
        base: &Path,
        overrides: &Overrides,
    ) -> Result<RunConfig, Vec<String>> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| vec![format!("config: {}", e.message())])?;
        raw.validate(base, overrides)
    }

    pub fn load(path: &Path, overrides: &Overrides) -> Result<RunConfig, Vec<String>> {
        let text =
            std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base, overrides)
    }
}

impl RawConfig {
    pub fn validate(self, base: &Path, overrides: &Overrides) -> Result<RunConfig, Vec<String>> {
        let mut errors = Vec::new();
        let inst = &self.instance;
        let lambdas = match &inst.lambda {
            Some(s) => build_model(Role::Eigenvalues, s, base, &mut errors),
            None => {
                errors.push("instance.lambda is required".into());
                None
            }
        };
        let gammas = match &inst.gamma {
            Some(s) => build_model(Role::Weights, s, base, &mut errors),
            None => {
                errors.push("instance.gamma is required".into());
                None
            }
        };

        let needs_eps = self.command != Command::Classify;
        let g = &self.grids;
        let range_given =
            g.epsilon_min.is_some() || g.epsilon_max.is_some() || g.epsilon_points.is_some();
        let epsilons = match (&g.epsilon, range_given) {
            (Some(_), true) => {
                errors.push(
                    "grids: give either `epsilon` or the epsilon_min/max/points range, not both"
                        .into(),
                );
                Vec::new()
            }
            (Some(list), false) => list.clone(),
            (None, true) => match (g.epsilon_min, g.epsilon_max, g.epsilon_points) {
                (Some(min), Some(max), Some(n)) => {
                    let mut ok = true;
                    if !(min > 0.0 && min.is_finite() && max.is_finite() && min <= max) {
                        errors.push(format!(
                            "grids: need 0 < epsilon_min <= epsilon_max, got {min} and {max}"
                        ));
                        ok = false;
                    }
                    if n == 0 {
                        errors.push("grids: epsilon_points must be at least 1".into());
                        ok = false;
                    }
                    if ok {
                        log_grid(max, min, n)
                    } else {
                        Vec::new()
                    }
                }
                _ => {
                    errors.push("grids: the epsilon range needs epsilon_min, epsilon_max and epsilon_points".into());
                    Vec::new()
                }
            },
            (None, false) => {
                if needs_eps {
                    errors.push("grids: an epsilon grid is required for this command".into());
                }
                Vec::new()
            }
        };
        for &e in &epsilons {
            if !(e.is_finite() && e > 0.0) {
                errors.push(format!(
                    "grids: epsilon must be positive and finite, got {e}"
                ));
            }
        }

        let dims = match (&g.d, inst.d) {
            (Some(ds), _) => ds.clone(),
            (None, Some(d)) => vec![d],
            (None, None) => {
                if matches!(
                    self.command,
                    Command::Count | Command::Bounds | Command::Sweep
                ) {
                    errors.push("instance.d or grids.d is required for this command".into());
                }
                Vec::new()
            }
        };
        if let (Some(_), Some(_)) = (&g.d, inst.d) {
            if self.command != Command::Sweep {
                errors.push("give the dimension once: instance.d or grids.d".into());
            }
        }
        if dims.contains(&0) {
            errors.push("dimensions must be at least 1".into());
        }
        if matches!(
            self.command,
            Command::Count | Command::Bounds | Command::Sweep
        ) && g.d.as_ref().is_some_and(|d| d.is_empty())
        {
            errors.push("grids.d must not be empty".into());
        }
        if needs_eps && g.epsilon.as_ref().is_some_and(|e| e.is_empty()) {
            errors.push("grids.epsilon must not be empty".into());
        }

        let cap = overrides
            .cap
            .or(self.cap)
            .unwrap_or(exptract::counting::DEFAULT_CAP);
        if cap == 0 {
            errors.push("cap must be at least 1".into());
        }

        let c = &self.classify;
        let mut classify = ClassifyOptions {
            thresholds: self.thresholds,
            ..ClassifyOptions::default()
        };
        match (c.s, c.t, &c.pairs) {
            (Some(_), Some(_), Some(_)) => {
                errors.push("classify: give `s`/`t` or `pairs`, not both".into())
            }
            (Some(s), Some(t), None) => classify.pairs = vec![(s, t)],
            (None, None, Some(p)) => classify.pairs = p.clone(),
            (None, None, None) => {}
            _ => errors.push("classify: `s` and `t` must be given together".into()),
        }
        if let Some(d) = c.delta {
            classify.corollary_delta = d;
        }
        if let Some(ds) = &c.deltas {
            classify.deltas = ds.clone();
        }
        let defaults = ProbeGrid::default();
        classify.grid = ProbeGrid {
            eps_levels: c.eps_levels.unwrap_or(defaults.eps_levels),
            j_levels: c.j_levels.unwrap_or(defaults.j_levels),
            seed: c.seed.unwrap_or(defaults.seed),
        };
        errors.extend(
            classify
                .violations()
                .into_iter()
                .map(|v| format!("classify: {v}")),
        );

        match (errors.is_empty(), lambdas, gammas) {
            (true, Some(lambdas), Some(gammas)) => Ok(RunConfig {
                command: self.command,
                cap,
                output: overrides.output.clone().or(self.output),
                require_exact: self.require_exact,
                lambdas,
                gammas,
                epsilons,
                dims,
                classify,
            }),
            _ => Err(errors),
        }
    }
}
