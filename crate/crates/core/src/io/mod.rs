//! Configuration, file formats and the drivers used by the `qes` binary.

pub mod complex;
pub mod config;
pub mod output;
pub mod run;

pub use complex::{format_complex, parse_complex};
pub use config::{default_t_max, IntegratorOverrides, RunConfig, RunConfigFile, StartMode};
pub use run::{exit_code, simulate, sweep_e2, threshold, RunOutcome};
