//! A finite permutation group engine for deciding subgroup embedding
//! properties and checking theorems about them over a corpus of small groups.

pub mod arith;
mod chain;
pub mod characteristic;
pub mod config;
pub mod constructions;
pub mod error;
mod group;
pub mod lattice;
mod perm;
pub mod properties;
pub mod theorems;

pub use arith::PrimeSet;
pub use config::{limits, set_limits, Limits};
pub use constructions::{Epimorphism, GroupSpec};
pub use error::{GroupError, Result};
pub use group::Group;
pub use lattice::{ChiefFactorPair, SubgroupSet};
pub use perm::{parse_cycles, Permutation};
pub use properties::{PropertyKind, PropertyReport, Witness};
pub use theorems::{CampaignReport, TheoremId, TheoremInstance, TheoremReport, Verdict};

/// Version string recorded in reports and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
