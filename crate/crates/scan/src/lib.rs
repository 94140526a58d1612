//! Scenario files, sweeps, propagation runs and report emission on top of
//! `pdc-core`. The `pdc-scan` binary is a thin wrapper around [`cli::run`].

// `!(x > 0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod emit;
pub mod error;
pub mod propagate;
pub mod report;
pub mod scenario;
pub mod sweep;

pub use emit::Format;
pub use error::{Result, ScanError};
pub use propagate::{run_propagation, PropagationReport};
pub use report::{paper_check, PaperCheck};
pub use scenario::{load_scenario, parse_scenario, Scenario};
pub use sweep::{
    run_angle_sweep, run_detuning_sweep, run_intensity_sweep, run_spectrum, SweepResult,
};
