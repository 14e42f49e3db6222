//! File formats and the command-line front end for `coltrs-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;

pub use error::{CliError, CliResult};
