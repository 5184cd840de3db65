//! IO, file formats and report serialization for the `citeclust` CLI.

pub mod error;
pub mod heatmap;
pub mod io;
pub mod report;

pub use error::{CliError, CliResult};
