//! Experiment configuration, sweeps and report outputs.

pub mod config;
pub mod csvio;
pub mod sweep;
pub mod tables;

pub use config::{load_config, save_config, ExperimentConfig, Pairing};
pub use sweep::{execute_sweep, run_seeds, run_single, run_sweep, simulate, RunSeeds, RunSummary, SweepOutput, SweepRecord};
pub use tables::{fuse_file, read_sweep, scenario_table, table1, table2, SweepRow};
