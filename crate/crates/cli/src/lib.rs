//! Library side of the `dsop` command: argument types, configuration
//! checks, the four subcommands and their CSV/JSON output.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or precondition
//! error, 3 numerical failure (the failing index is reported).

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use config::{Family, RunConfig, WeightArgs};
pub use error::CliError;
pub use output::CsvTable;
