//! Survivable ground networks relayed by a UAV swarm.
//!
//! Ground agents flock as boids (or random-walk) across a bounded field while
//! a small UAV swarm tries to keep them connected. Every UAV steers with a
//! five-force boids rule whose weights and speed come from the active genome
//! of its own genetic algorithm, evolved online in fixed windows against the
//! coverage it and its one-hop neighbours observed.

pub mod config;
pub mod engine;
pub mod error;
pub mod forces;
pub mod ga;
pub mod geom;
pub mod ground;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod uav;

pub use config::{Formation, GroundMode, GroundWeights, Preset, ScenarioConfig};
pub use engine::{init_state, run_scenario, sweep, RunOutput, SimulationState, Sweep};
pub use error::{ConfigError, Error, Result};
pub use ga::{ActiveSwap, GaInstance, GaParams, Genome};
pub use geom::{EnvBounds, Vec2};
pub use ground::GroundAgent;
pub use metrics::{MetricsRecord, TimelineSummary};
pub use rng::RngStream;
pub use uav::{AirView, UavAgent};
