//! Scenario parsing and batch commands behind the `maxcov` binary.

pub mod commands;
pub mod error;
pub mod output;
pub mod scenario;

pub use commands::{check, covariantize_cmd, report, Options, Outcome};
pub use error::{CliError, Result};
pub use scenario::{Scenario, ScenarioConfig};
