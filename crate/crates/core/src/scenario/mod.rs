//! Scenario configuration, presets, runs and file output.

pub mod config;
pub mod export;
pub mod presets;
pub mod run;

pub use config::{Mode, ProbeBeam, ScenarioConfig, Sweep, Variant};
pub use presets::{all_presets, preset, Preset, PRESET_NAMES};
pub use run::{run_scenario, RunSummary};
