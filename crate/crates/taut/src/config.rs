use std::path::PathBuf;

use clap::ValueEnum;
use taut_core::zip_oracle::Guard;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Largest genus for which the ring is computed.
pub const DEFAULT_MAX_RING_GENUS: usize = 8;

#[derive(Clone, Debug)]
pub struct Config {
    pub format: Format,
    pub cache_dir: PathBuf,
    pub jobs: usize,
    pub seed: u64,
    pub max_ring_genus: usize,
    pub guard: Guard,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            format: Format::Text,
            cache_dir: PathBuf::from(".taut-cache"),
            jobs: 1,
            seed: 0,
            max_ring_genus: DEFAULT_MAX_RING_GENUS,
            guard: Guard::default(),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        if self.guard.max_prime > taut_core::zip_oracle::MAX_PRIME {
            return Err(CliError::Usage(format!(
                "--max-prime cannot exceed {}",
                taut_core::zip_oracle::MAX_PRIME
            )));
        }
        Ok(())
    }

    pub fn check_ring_genus(&self, g: usize) -> Result<()> {
        if g == 0 {
            return Err(CliError::Usage("genus must be at least 1".into()));
        }
        if g > self.max_ring_genus {
            return Err(CliError::Usage(format!(
                "genus {g} is outside the supported range 1..={}",
                self.max_ring_genus
            )));
        }
        Ok(())
    }

    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", self.jobs)))
    }
}
