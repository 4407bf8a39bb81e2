//! Runtime limits shared by every exhaustive algorithm in the engine.
//!
//! The limits are process-wide. Binaries set them once at startup; library
//! code only reads them.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 20_000;
pub const DEFAULT_SUBGROUP_BOUND: u64 = 256;
pub const DEFAULT_DEGREE_CAP: u64 = 64;

static ENUMERATION_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_BOUND);
static SUBGROUP_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_SUBGROUP_BOUND);
static DEGREE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_DEGREE_CAP);

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest group order whose elements may be listed.
    pub enumeration_bound: u64,
    /// Largest ambient order for exhaustive subgroup enumeration.
    pub subgroup_bound: u64,
    /// Largest degree produced by `direct_product`.
    pub degree_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            subgroup_bound: DEFAULT_SUBGROUP_BOUND,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

pub fn limits() -> Limits {
    Limits {
        enumeration_bound: ENUMERATION_BOUND.load(Ordering::Relaxed),
        subgroup_bound: SUBGROUP_BOUND.load(Ordering::Relaxed),
        degree_cap: DEGREE_CAP.load(Ordering::Relaxed),
    }
}

pub fn set_limits(l: Limits) {
    ENUMERATION_BOUND.store(l.enumeration_bound, Ordering::Relaxed);
    SUBGROUP_BOUND.store(l.subgroup_bound, Ordering::Relaxed);
    DEGREE_CAP.store(l.degree_cap, Ordering::Relaxed);
}
