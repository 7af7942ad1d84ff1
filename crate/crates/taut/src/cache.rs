//! On-disk oracle results. Files are replaced atomically, so concurrent
//! readers see either the old or the new report, never a partial one.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::json::to_string_pretty;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub invariant: String,
    pub label: String,
    pub points: usize,
    /// Orbit sizes, largest first.
    pub orbits: Vec<usize>,
    pub p_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaEntry {
    pub r: usize,
    /// `[invariant on I^⊥/I, invariant on H]` pairs.
    pub table: Vec<[String; 2]>,
    pub labels: Vec<[String; 2]>,
    pub points: usize,
    pub fiber_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub g: usize,
    pub p: u32,
    pub zip_count: usize,
    pub orbit_count: usize,
    pub invariant_constant_on_orbits: bool,
    pub classes: Vec<ClassEntry>,
    pub iota: Option<IotaEntry>,
    pub toolkit_version: String,
}

pub fn cache_path(dir: &Path, g: usize, p: u32, r: Option<usize>) -> PathBuf {
    let r = r.map_or_else(|| "none".to_string(), |r| r.to_string());
    dir.join(format!("oracle-g{g}-p{p}-r{r}-v{TOOLKIT_VERSION}.json"))
}

/// A cached record for exactly this key, if one exists and parses.
pub fn load(dir: &Path, g: usize, p: u32, r: Option<usize>) -> Option<OracleRecord> {
    let text = fs::read_to_string(cache_path(dir, g, p, r)).ok()?;
    let rec: OracleRecord = serde_json::from_str(&text).ok()?;
    let key_matches = rec.g == g
        && rec.p == p
        && rec.iota.as_ref().map(|i| i.r) == r
        && rec.toolkit_version == TOOLKIT_VERSION;
    key_matches.then_some(rec)
}

pub fn store(dir: &Path, rec: &OracleRecord) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, rec.g, rec.p, rec.iota.as_ref().map(|i| i.r));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(to_string_pretty(rec)?.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}
