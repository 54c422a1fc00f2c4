//! Process-wide ground-set size cap for exhaustive searches.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_GROUND_SET_CAP: usize = 16;

/// Largest target matroid accepted by the minor search.
pub const TARGET_CAP: usize = 10;

static GROUND_SET_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUND_SET_CAP);

pub fn ground_set_cap() -> usize {
    GROUND_SET_CAP.load(Ordering::Relaxed)
}

/// Overrides the cap for the rest of the process (the CLI reads `MATDEC_CAP`).
pub fn set_ground_set_cap(cap: usize) {
    GROUND_SET_CAP.store(cap.min(crate::matroid::MAX_ELEMENTS), Ordering::Relaxed);
}

pub(crate) fn check(n: usize) -> Result<()> {
    let cap = ground_set_cap();
    if n > cap {
        Err(Error::GroundSetTooLarge { n, cap })
    } else {
        Ok(())
    }
}
