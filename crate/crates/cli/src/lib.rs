//! Config-driven front end for the topocount estimator: single experiment
//! runs, parameter sweeps, and barcode plotting, with deterministic
//! artifacts per seed.

pub mod config;
pub mod error;
pub mod plot;
pub mod run;
pub mod sweep;

pub use config::{ExperimentConfig, SourceLaw, SourceSpec, CONFIG_SCHEMA_VERSION};
pub use error::{CliError, Result};
pub use plot::plot_barcode;
pub use run::{evaluate, run_experiment, Evaluation, RunOutcome, RunReport};
pub use sweep::{sweep, SweepAxis, SweepCell, SweepTable};
