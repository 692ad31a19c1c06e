use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use exptract_cli::config::{Overrides, RunConfig};
use exptract_cli::run::{run, RunOptions};
use exptract_cli::CliError;

/// Exact information complexity, bounds and exponential tractability for
/// weighted tensor product problems.
#[derive(Debug, Parser)]
#[command(name = "exptract", version)]
struct Args {
    /// Run file (TOML) naming the command, instance and grids.
    #[arg(long)]
    config: PathBuf,

    /// CSV output path; overrides `output` in the run file.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Node cap for exact counts; overrides `cap` in the run file.
    #[arg(long)]
    cap: Option<u64>,

    /// Omit the timestamp header and wall-clock columns.
    #[arg(long)]
    no_timestamp: bool,

    /// Worker threads; 0 or unset uses every core.
    #[arg(long, env = "EXPTRACT_THREADS")]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("exptract: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let overrides = Overrides {
        output: args.output.clone(),
        cap: args.cap,
    };
    let cfg = RunConfig::load(&args.config, &overrides).map_err(CliError::Config)?;
    if let Some(n) = args.threads.filter(|&n| n > 0) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let opts = RunOptions {
        no_timestamp: args.no_timestamp,
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(&cfg, &opts, &mut lock)
}
