//! Scenario driver for the cmspin library: TOML configuration, execution of
//! the six scenarios and deterministic artifact files.

pub mod config;
pub mod run;

pub use config::{Format, Scenario, ScenarioConfig, Sizes};
pub use run::{load, run, RunError};
