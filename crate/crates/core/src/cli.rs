//! Command-line entry point: `tickdrift <subcommand> --config <path>`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 runtime/model error.

use clap::{Parser, Subcommand};
use std::path::PathBuf;

use crate::durations::classify_limit;
use crate::error::{ModelError, Result};
use crate::experiments::{
    run_rate_experiment, run_s2_experiment, run_simulate, run_ttest_experiment, ExperimentConfig,
    ExperimentReport,
};

#[derive(Parser, Debug)]
#[command(name = "tickdrift", version, about = "Pure-jump transaction-level price model laboratory")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct CommonArgs {
    /// Path to the TOML experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the calendar return spacing T.
    #[arg(long)]
    spacing: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one tick path and export it as CSV.
    Simulate(CommonArgs),
    /// Print the predicted limit (gamma, family) for the configured model.
    Classify(CommonArgs),
    /// Partial-sum rate and limit-shape experiment.
    Rate(CommonArgs),
    /// t-test size / divergence experiment.
    Ttest(CommonArgs),
    /// s_n^2 consistency experiment.
    S2(CommonArgs),
}

fn load_config(args: &CommonArgs) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_path(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.outputs = out.clone();
    }
    if let Some(spacing) = args.spacing {
        cfg.spacing = spacing;
    }
    cfg.validate()?;
    if let Some(threads) = args.threads {
        // ignore the error if a global pool already exists (repeat calls in tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(cfg)
}

fn write_report(report: &ExperimentReport, cfg: &ExperimentConfig) -> Result<()> {
    let files = report.write(cfg, &cfg.outputs)?;
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

/// Run the CLI; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own usage/help; --help and --version are not errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e @ ModelError::Domain(_)) => {
            eprintln!("config error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => {
            let cfg = load_config(&args)?;
            let path = run_simulate(&cfg)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Classify(args) => {
            let cfg = load_config(&args)?;
            let limit = classify_limit(&cfg.model)?;
            let json = serde_json::to_string(&limit)
                .map_err(|e| ModelError::Domain(format!("serialization failed: {e}")))?;
            println!("{json}");
            Ok(())
        }
        Command::Rate(args) => {
            let cfg = load_config(&args)?;
            write_report(&run_rate_experiment(&cfg)?, &cfg)
        }
        Command::Ttest(args) => {
            let cfg = load_config(&args)?;
            write_report(&run_ttest_experiment(&cfg, None)?, &cfg)
        }
        Command::S2(args) => {
            let cfg = load_config(&args)?;
            write_report(&run_s2_experiment(&cfg)?, &cfg)
        }
    }
}
