//! Command execution. Every command writes CSV rows in grid order; grid
//! points are evaluated in parallel chunks so memory stays bounded.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use exptract::bounds::{bound_report, BoundReport};
use exptract::counting::{count_exact, CountOutcome, CountResult};
use exptract::seqcore::{d_of_epsilon, j_of_epsilon, IndexBound, ProblemInstance};
use exptract::tract::{classify_with, ClassificationReport, Method};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::format::{float, opt_float, text};
use crate::CliError;

pub const COUNT_COLUMNS: &str = "epsilon,d,count,capped,nodes_visited,elapsed_ms";
pub const BOUNDS_COLUMNS: &str =
    "epsilon,d,ln_count,ln_lemma1,ln_product_bound,block_index,ln_eq2_8,ln_eq2_9";
pub const SWEEP_COLUMNS: &str =
    "epsilon,d,count,capped,nodes_visited,elapsed_ms,ln_count,ln_lemma1,ln_product_bound";
pub const THRESHOLDS_COLUMNS: &str = "epsilon,j_eps,d_eps";
pub const CLASSIFY_COLUMNS: &str =
    "notion,verdict,method,certifying,s,t,exponent_estimate,criterion";

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Omit the timestamp header and wall-clock columns, making output
    /// byte-identical across runs.
    pub no_timestamp: bool,
}

/// CSV destination: stdout, or a file written under a temporary name and
/// moved into place only when the run succeeds.
struct Sink<'a> {
    out: Box<dyn Write + 'a>,
    files: Option<(PathBuf, PathBuf)>,
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

impl<'a> Sink<'a> {
    fn open(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Self, CliError> {
        match path {
            None => Ok(Sink {
                out: Box::new(stdout),
                files: None,
            }),
            Some(path) => {
                let mut partial = path.as_os_str().to_owned();
                partial.push(".partial");
                let partial = PathBuf::from(partial);
                let file = File::create(&partial).map_err(|e| io_error(&partial, e))?;
                Ok(Sink {
                    out: Box::new(BufWriter::new(file)),
                    files: Some((path.to_path_buf(), partial)),
                })
            }
        }
    }

    fn line(&mut self, s: &str) -> Result<(), CliError> {
        let path = self
            .files
            .as_ref()
            .map(|(p, _)| p.clone())
            .unwrap_or_else(|| "<stdout>".into());
        writeln!(self.out, "{s}").map_err(|e| io_error(&path, e))
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.out
            .flush()
            .map_err(|e| io_error(Path::new("<output>"), e))?;
        drop(self.out);
        if let Some((path, partial)) = self.files {
            std::fs::rename(&partial, &path).map_err(|e| io_error(&path, e))?;
        }
        Ok(())
    }

    fn abort(self) {
        drop(self.out);
        if let Some((_, partial)) = self.files {
            let _ = std::fs::remove_file(partial);
        }
    }
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Runs one validated configuration. CSV goes to `cfg.output` or `stdout`;
/// the classification text report goes to `stdout` when a file is named.
pub fn run(cfg: &RunConfig, opts: &RunOptions, stdout: &mut dyn Write) -> Result<(), CliError> {
    if cfg.command == Command::Classify {
        return run_classify(cfg, opts, stdout);
    }
    let mut sink = Sink::open(cfg.output.as_deref(), stdout)?;
    let body = (|| -> Result<Option<CliError>, CliError> {
        if !opts.no_timestamp {
            sink.line(&format!("# generated {}", timestamp()))?;
        }
        match cfg.command {
            Command::Count => counts(cfg, opts, &mut sink),
            Command::Bounds | Command::Sweep => reports(cfg, opts, &mut sink),
            Command::Thresholds => thresholds(cfg, &mut sink).map(|_| None),
            Command::Classify => unreachable!("handled above"),
        }
    })();
    match body {
        Ok(deferred) => {
            sink.finish()?;
            deferred.map_or(Ok(()), Err)
        }
        Err(e) => {
            sink.abort();
            Err(e)
        }
    }
}

/// Grid points in output order: epsilon outer, dimension inner.
fn grid_points(cfg: &RunConfig) -> Vec<(f64, u64)> {
    cfg.epsilons
        .iter()
        .flat_map(|&e| cfg.dims.iter().map(move |&d| (e, d)))
        .collect()
}

/// Evaluates `f` over the grid in parallel chunks, handing results to
/// `emit` strictly in grid order.
fn for_each_point<T: Send>(
    cfg: &RunConfig,
    f: impl Fn(f64, u64) -> Result<T, CliError> + Sync,
    mut emit: impl FnMut(f64, u64, T) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let points = grid_points(cfg);
    let chunk = 4 * rayon::current_num_threads().max(1);
    for block in points.chunks(chunk) {
        let results: Vec<Result<T, CliError>> = block.par_iter().map(|&(e, d)| f(e, d)).collect();
        for (&(e, d), r) in block.iter().zip(results) {
            emit(e, d, r?)?;
        }
    }
    Ok(())
}

fn instance(cfg: &RunConfig, d: u64) -> Result<ProblemInstance, CliError> {
    Ok(ProblemInstance::new(
        d,
        cfg.lambdas.clone(),
        cfg.gammas.clone(),
    )?)
}

fn count_cells(c: &CountResult, opts: &RunOptions) -> String {
    let (value, capped) = match c.count {
        CountOutcome::Exact(n) => (n, false),
        CountOutcome::Capped(n) => (n, true),
    };
    let elapsed = if opts.no_timestamp {
        String::new()
    } else {
        float(c.elapsed.as_secs_f64() * 1e3)
    };
    format!("{value},{capped},{},{elapsed}", c.nodes_visited)
}

fn counts(
    cfg: &RunConfig,
    opts: &RunOptions,
    sink: &mut Sink,
) -> Result<Option<CliError>, CliError> {
    sink.line(COUNT_COLUMNS)?;
    let mut first_capped = None;
    for_each_point(
        cfg,
        |e, d| Ok(count_exact(&instance(cfg, d)?, e, cfg.cap)?),
        |e, d, c| {
            if c.count.is_capped() && first_capped.is_none() {
                first_capped = Some((e, d));
            }
            sink.line(&format!("{},{d},{}", float(e), count_cells(&c, opts)))
        },
    )?;
    Ok(deferred_cap(cfg, first_capped))
}

fn deferred_cap(cfg: &RunConfig, first_capped: Option<(f64, u64)>) -> Option<CliError> {
    match first_capped {
        Some((epsilon, d)) if cfg.require_exact => Some(CliError::CapExceeded { epsilon, d }),
        _ => None,
    }
}

fn reports(
    cfg: &RunConfig,
    opts: &RunOptions,
    sink: &mut Sink,
) -> Result<Option<CliError>, CliError> {
    let sweep = cfg.command == Command::Sweep;
    sink.line(if sweep { SWEEP_COLUMNS } else { BOUNDS_COLUMNS })?;
    let mut first_capped = None;
    for_each_point(
        cfg,
        |e, d| {
            let r = bound_report(&instance(cfg, d)?, e, Some(cfg.cap))?;
            let v = r.violations();
            if !v.is_empty() {
                return Err(CliError::Internal(format!(
                    "epsilon = {e}, d = {d}: {}",
                    v.join("; ")
                )));
            }
            Ok(r)
        },
        |e, d, r: BoundReport| {
            let count = r.exact_count.expect("a cap was given");
            if count.count.is_capped() && first_capped.is_none() {
                first_capped = Some((e, d));
            }
            let head = format!("{},{d}", float(e));
            let ln_count = opt_float(r.ln_count());
            let ln_saturation = opt_float(r.saturation.map(|l| l.ln_upper));
            let ln_product = opt_float(r.ln_product_bound);
            if sweep {
                return sink.line(&format!(
                    "{head},{},{ln_count},{ln_saturation},{ln_product}",
                    count_cells(&count, opts)
                ));
            }
            if r.block_bounds.is_empty() {
                return sink.line(&format!(
                    "{head},{ln_count},{ln_saturation},{ln_product},,,"
                ));
            }
            for b in &r.block_bounds {
                sink.line(&format!(
                    "{head},{ln_count},{ln_saturation},{ln_product},{},{},{}",
                    b.block.index,
                    float(b.ln_power_bound),
                    float(b.ln_sum_bound)
                ))?;
            }
            Ok(())
        },
    )?;
    Ok(deferred_cap(cfg, first_capped))
}

fn thresholds(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    sink.line(THRESHOLDS_COLUMNS)?;
    for &e in &cfg.epsilons {
        let j = j_of_epsilon(&cfg.lambdas, e)?;
        let d = match d_of_epsilon(&cfg.gammas, e)? {
            IndexBound::Finite(n) => n.to_string(),
            IndexBound::Infinite => "inf".into(),
        };
        sink.line(&format!("{},{j},{d}", float(e)))?;
    }
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Theorem => "theorem",
        Method::Catalog => "catalog",
        Method::Derived => "derived",
        Method::CorollaryNecessary => "corollary_necessary",
        Method::CorollarySufficient => "corollary_sufficient",
        Method::PathGrid => "path_grid",
    }
}

#[derive(Serialize)]
struct ClassifyFile<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated: Option<String>,
    report: &'a ClassificationReport,
}

fn classify_rows(report: &ClassificationReport, sink: &mut Sink) -> Result<(), CliError> {
    sink.line(CLASSIFY_COLUMNS)?;
    for e in &report.entries {
        sink.line(&format!(
            "{},{},{},{},{},{},{},{}",
            e.notion,
            e.verdict,
            method_name(e.method),
            e.certifying,
            opt_float(e.s),
            opt_float(e.t),
            opt_float(e.exponent_estimate),
            text(&e.criterion)
        ))?;
    }
    Ok(())
}

/// Plain-text summary of a classification.
pub fn classify_text(report: &ClassificationReport) -> String {
    let mut out = String::new();
    let th = &report.thresholds;
    out.push_str(&format!("eigenvalues: {}\n", report.lambdas.family()));
    out.push_str(&format!("weights:     {}\n", report.gammas.family()));
    out.push_str(&format!(
        "thresholds:  t_div = {}, t_van = {}, tail = {}, slack = {}, min probes = {}, max gaps = {}\n",
        th.t_div, th.t_van, th.tail_fraction, th.monotone_slack, th.min_probes, th.max_gap_fraction
    ));
    out.push_str(&format!(
        "probes:      ln ln(1/eps) = 2^1..2^{}, ln j = 2^1..2^{}\n\n",
        report.grid.eps_levels, report.grid.j_levels
    ));
    for e in &report.entries {
        out.push_str(&format!(
            "{:<18} {:<13} {}{}\n",
            e.notion,
            e.verdict.to_string(),
            method_name(e.method),
            if e.certifying { " (structural)" } else { "" }
        ));
        out.push_str(&format!("    {}\n", e.criterion));
        if let Some(x) = e.exponent_estimate {
            out.push_str(&format!("    exponent estimate {x}\n"));
        }
        for d in &e.diagnostics {
            let slope = d
                .diagnostic
                .trend_slope
                .map(|s| format!("{s:.4}"))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "    {:<34} {:<17} slope {slope:<9} gaps {}\n",
                d.name,
                d.diagnostic.verdict.to_string(),
                d.diagnostic.gaps
            ));
        }
        for n in &e.notes {
            out.push_str(&format!("    note: {n}\n"));
        }
    }
    let clashes: Vec<_> = report
        .cross_checks
        .iter()
        .filter(|c| !c.consistent)
        .collect();
    out.push_str(&format!(
        "\ncross-checks: {} evaluated, {} contradictions\n",
        report.cross_checks.len(),
        clashes.len()
    ));
    for c in clashes {
        out.push_str(&format!("    {}: {} vs {}\n", c.name, c.left, c.right));
    }
    out
}

fn run_classify(
    cfg: &RunConfig,
    opts: &RunOptions,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let report = classify_with(&cfg.lambdas, &cfg.gammas, &cfg.classify)?;
    let generated = (!opts.no_timestamp).then(timestamp);
    let Some(path) = cfg.output.as_deref() else {
        let mut sink = Sink::open(None, stdout)?;
        if let Some(g) = &generated {
            sink.line(&format!("# generated {g}"))?;
        }
        classify_rows(&report, &mut sink)?;
        return sink.finish();
    };
    let mut json_path = path.as_os_str().to_owned();
    json_path.push(".json");
    let json_path = PathBuf::from(json_path);
    let json = serde_json::to_string_pretty(&ClassifyFile {
        generated: generated.clone(),
        report: &report,
    })
    .map_err(|e| CliError::Internal(e.to_string()))?;
    std::fs::write(&json_path, json + "\n").map_err(|e| io_error(&json_path, e))?;
    {
        let mut sink = Sink::open(Some(path), stdout)?;
        let rows = (|| {
            if let Some(g) = &generated {
                sink.line(&format!("# generated {g}"))?;
            }
            classify_rows(&report, &mut sink)
        })();
        match rows {
            Ok(()) => sink.finish()?,
            Err(e) => {
                sink.abort();
                return Err(e);
            }
        }
    }
    write!(stdout, "{}", classify_text(&report)).map_err(|e| io_error(Path::new("<stdout>"), e))
}
