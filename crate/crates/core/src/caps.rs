//! Resource limits shared by the searches and iterations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest degree of a composed or iterated P¹ map.
    pub degree: u64,
    /// Largest number of entries in a hash table of maps or points.
    pub hash_entries: usize,
    /// Largest number of candidates in an enumeration.
    pub enumeration: u64,
    /// Largest number of iterations used for a height estimate.
    pub iterations: u32,
    /// Largest number of orbit steps for degree-one maps and orbit searches.
    pub orbit_steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { degree: 4096, hash_entries: 1_000_000, enumeration: 10_000_000, iterations: 64, orbit_steps: 10_000 }
    }
}

impl Caps {
    pub fn check_degree(&self, degree: u128) -> Result<()> {
        if degree > self.degree as u128 {
            return Err(Error::resource(format!("degree {degree} exceeds the cap {}", self.degree)));
        }
        Ok(())
    }
}
