//! Command-line front end for `taut-core`: report rendering, the oracle
//! result cache, and the acceptance criteria behind `selftest`.

pub mod cache;
pub mod commands;
pub mod config;
pub mod criteria;
pub mod error;
pub mod json;
pub mod rings;

pub use config::{Config, Format};
pub use error::{CliError, Result};
