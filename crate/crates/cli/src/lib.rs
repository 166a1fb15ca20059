//! Configuration, evaluation and CSV output behind the `hybridcool` binary.

pub mod config;
pub mod engine;
pub mod output;

pub use config::{resolve, ConfigError, Overrides, RunConfig, SweepSpec};
pub use engine::{cool, run_sweep, spectrum_rows, CoolReport, Outcome, SweepRecord};
