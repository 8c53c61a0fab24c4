//! Command-line front end for `cycloinv-core`: text, CSV and JSON output,
//! and the `verify` suites.

pub mod cli;
pub mod output;
pub mod verify;
