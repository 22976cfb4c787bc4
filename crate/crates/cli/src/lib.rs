//! Experiment runner behind the `paley` binary: parses a [`RunConfig`],
//! fans the instances out to a worker pool and emits one JSON line (or CSV
//! row) per checked instance.

pub mod config;
pub mod envelope;
pub mod runner;
pub mod tasks;

pub use config::{Cli, Format, Opts, RunConfig, SweepKind, TaskId, VerifyTask};
pub use envelope::{Envelope, FieldInfo, SCHEMA};
pub use runner::{exit_code, run, CliError};
