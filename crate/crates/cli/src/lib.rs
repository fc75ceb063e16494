//! File formats, reports and the command-line front end for
//! `inducedmap-core`.

pub mod app;
pub mod error;
pub mod format;
pub mod hunt;
pub mod report;
pub mod repro;

pub use error::{exit, CliError};
