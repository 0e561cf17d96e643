//! Agent-based simulation of a rugby match watched by a self-organising
//! drone swarm, with the coverage, multi-view and communication metrics used
//! to evaluate it.
//!
//! Every run is deterministic in its seed. See [`harness`] for sweeps and
//! CSV outputs.

pub mod comms;
pub mod detection;
pub mod error;
pub mod geom;
pub mod harness;
pub mod params;
pub mod rng;
pub mod rugby;
pub mod sim;
pub mod swarm;

pub use error::{ConfigError, FusionError, HarnessError, MetricError, SimError};
pub use geom::{clamp_to_field, distance, FieldSpec, Vec2};
pub use params::ModelParams;
pub use rng::{derive_run_seed, RngHandle};
pub use sim::{MatchLog, SimClock, Simulation, WorldState};
pub use swarm::{StrategyMode, StrategySpec};
