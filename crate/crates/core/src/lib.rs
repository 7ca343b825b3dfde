//! Counting lifts of surface-group homomorphisms through group epimorphisms
//! with finite kernel.
//!
//! Every count is produced two independent ways: a closed-form sum over the
//! (projective) irreducible representations of the kernel ([`counting`]), and
//! exhaustive enumeration ([`oracle`]). The supporting machinery lives in
//! [`group`] (element-level finite groups and extensions), [`linalg`] (small
//! dense complex matrices), [`repr`] (irreducible representations) and
//! [`cohomology`] (2-cocycles, stabilizers and fundamental-class pairings).

pub mod catalog;
pub mod cohomology;
pub mod counting;
pub mod error;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod repr;
pub mod schema;
mod serde_c64;

pub use error::{Error, Result};
pub use linalg::TolerancePolicy;

pub type C64 = num_complex::Complex64;

/// Default cap on the order of any loaded group.
pub const DEFAULT_MAX_ORDER: usize = 64;
/// Default enumeration budget, in relator evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Retry budget for the randomized splitting of regular representations.
pub const DEFAULT_RETRIES: u32 = 8;

/// Settings shared by every computation.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub tol: TolerancePolicy,
    /// Seed for the randomized representation splitting.
    pub seed: u64,
    pub max_order: usize,
    pub budget: u64,
    pub retries: u32,
    /// Solve the last handle of an enumeration by histogram lookup.
    pub prune: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: TolerancePolicy::default(),
            seed: 0x5eed,
            max_order: DEFAULT_MAX_ORDER,
            budget: DEFAULT_BUDGET,
            retries: DEFAULT_RETRIES,
            prune: false,
        }
    }
}
