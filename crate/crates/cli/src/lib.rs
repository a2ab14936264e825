//! Command-line front end and file formats for doppelganger graph
//! generation.

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod pipeline;
pub mod report;

pub use error::{CliError, Result};
