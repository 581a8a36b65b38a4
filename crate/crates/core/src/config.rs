use serde::{Deserialize, Serialize};

/// Tunable limits shared by every computation. All searches are bounded by
/// one of these.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Rings up to this many elements get an exhaustive axiom check.
    pub axiom_cutoff: usize,
    /// Largest ring whose ideals may be enumerated.
    pub ideal_cutoff: usize,
    /// Candidate cap for exhaustive kernel searches.
    pub budget: u64,
    /// Largest module handed to the isomorphism search.
    pub iso_cutoff: usize,
    /// Default resolution depth.
    pub depth: usize,
    pub lcg_multiplier: u64,
    pub lcg_increment: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            axiom_cutoff: 256,
            ideal_cutoff: 4096,
            budget: 1_000_000,
            iso_cutoff: 4096,
            depth: 6,
            lcg_multiplier: crate::lcg::DEFAULT_MULTIPLIER,
            lcg_increment: crate::lcg::DEFAULT_INCREMENT,
        }
    }
}
