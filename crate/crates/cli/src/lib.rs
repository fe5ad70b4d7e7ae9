//! File formats, the polynomial grammar and the `linesing` command line.

// Errors carry exact residual matrices; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod app;
pub mod format;
pub mod parse;
pub mod report;

pub use app::{run, run_args, Cli, Command, Format, Outcome};
