use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ilwlab_core::error::LabError;
use ilwlab_core::experiments::{run_experiment, ExperimentConfig, ExperimentKind};

/// Pseudospectral ILW / Benjamin-Ono experiments on the torus.
#[derive(Debug, Parser)]
#[command(name = "ilwlab", version)]
struct Cli {
    /// solve, deepwater, gauge_check, scaling_check, galilean_check, conserve or symbols
    experiment: String,
    /// JSON experiment configuration
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: `out_dir` from the config, else ./ilwlab_out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for parallel experiments
    #[arg(long)]
    threads: Option<usize>,
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_BREAKDOWN: u8 = 3;

fn env_threads() -> Option<usize> {
    std::env::var("ILWLAB_FFT_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&k| k > 0)
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>, LabError> {
    let kind: ExperimentKind = cli.experiment.parse()?;
    let cfg = ExperimentConfig::load(&cli.config)?;
    if cfg.experiment != kind {
        return Err(LabError::Config(format!(
            "command `{}` does not match config experiment `{}`",
            kind.name(),
            cfg.experiment.name()
        )));
    }
    if cli.threads == Some(0) {
        return Err(LabError::Config("--threads must be positive".into()));
    }
    let threads = cli
        .threads
        .or(cfg.threads)
        .or_else(env_threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("ilwlab_out"));
    log::info!("{} on {} thread(s), writing to {}", kind.name(), threads, out.display());
    Ok(run_experiment(&cfg, &out, threads)?.files)
}

fn exit_code(err: &LabError) -> u8 {
    if err.is_numerical_breakdown() {
        EXIT_BREAKDOWN
    } else if matches!(err, LabError::Io(_)) {
        1
    } else {
        EXIT_VALIDATION
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ilwlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
