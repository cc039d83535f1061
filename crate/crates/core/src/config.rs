use serde::{Deserialize, Serialize};

/// Combinatorial blowup guards. Every exhaustive routine takes its limit from here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest group order produced by any construction.
    pub order: usize,
    /// Largest group order for normal-subgroup enumeration (and everything built on it).
    pub normal: usize,
    /// Largest group order for brute-force weight.
    pub weight: usize,
    /// Largest number of generator-image assignments a quotient search may face.
    pub search_budget: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 1024,
            normal: 128,
            weight: 128,
            search_budget: 100_000_000,
        }
    }
}
