//! Config-driven Monte Carlo harness behind the CLI: scenario wiring,
//! experiment drivers and CSV/manifest reporting.

pub mod config;
pub mod report;
pub mod run;
pub mod scenario;

pub use config::ExperimentConfig;
pub use report::{ExperimentReport, ReportRow};
pub use run::{
    ks_critical_1pct, run_rate_experiment, run_s2_experiment, run_simulate, run_ttest_experiment,
    T_CRITICAL,
};
pub use scenario::{sample_durations, sample_ticks, simulate_returns};
