//! Command line front end for `linper-core`: the expression language,
//! universe files, and JSON output.

pub mod cli;
pub mod error;
pub mod parse;
pub mod report;
pub mod universe;

pub use error::CliError;
