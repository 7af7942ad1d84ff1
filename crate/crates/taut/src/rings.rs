//! Per-genus memo of tautological rings, shared across threads.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use taut_core::taut_ring::GradedRing;

use crate::error::{CliError, Result};

type Slot = Arc<OnceLock<Arc<GradedRing>>>;

static RINGS: OnceLock<Mutex<HashMap<usize, Slot>>> = OnceLock::new();

/// The ring `Ř_g`, computed at most once per process.
pub fn ring(g: usize) -> Result<Arc<GradedRing>> {
    let slot = {
        let mut map = RINGS
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner());
        map.entry(g).or_default().clone()
    };
    if let Some(r) = slot.get() {
        return Ok(r.clone());
    }
    let computed = Arc::new(GradedRing::tautological(g).map_err(CliError::core("taut_ring"))?);
    Ok(slot.get_or_init(|| computed).clone())
}
