//! Command-line front end and CSV output for `annuli-core`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod error;
pub mod figures;
pub mod format;

pub use error::{CliError, CliResult};
