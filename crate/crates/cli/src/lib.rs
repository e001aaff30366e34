//! Experiment harness behind the `lexcycle` binary: seeded batch generation,
//! theorem checks with replayable failure records, and single-graph
//! commands for certificates, recognition and LexCycle.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{check_theorem, ExperimentReport};
pub use config::{ExperimentConfig, Format, GenClass};
pub use report::Outcome;
