//! Experiment runner around [`obversim_core`]: configuration parsing,
//! parallel histogram accumulation and CSV/JSON artifact output.

pub mod config;
pub mod output;
pub mod parallel;
pub mod runner;

pub use config::{CliError, ExperimentConfig};
pub use runner::run_cli;
