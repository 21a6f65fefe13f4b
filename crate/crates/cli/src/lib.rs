//! Batch jobs over the `qubitize` library: circuit synthesis, verification
//! suites, error budgets, resource estimates and lambda scans.

pub mod config;
pub mod jobs;
pub mod plot;

pub use config::JobConfig;
pub use jobs::{run, Outcome};
