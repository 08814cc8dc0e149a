//! Randomized sequence generators, swap local search, restarts and an exact
//! enumeration oracle.
//!
//! Every randomized solver is driven by a [`SolverRng`] seeded from a `u64`;
//! independent trials derive their seeds with [`substream_seed`], so results
//! do not depend on the order in which trials run.

mod brute;
mod budget;
mod generate;
mod search;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use brute::{brute_force, distinct_permutations};
pub use budget::{Budget, SearchParams};
pub use generate::{nr_sequence, uniform_sequence, NrSampler};
pub use search::{local_search, run_random, run_restarts, Generator};

use crate::error::{Error, Result};
use crate::model::{InjectionSequence, Instance};

pub type SolverRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` within a run seeded by `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub best_sequence: InjectionSequence,
    pub best_makespan: u64,
    pub sequences_evaluated: u64,
    pub elapsed_ms: u64,
    /// `None` for solvers that were handed a generator or use no randomness.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "sr")]
    Sr,
    #[serde(rename = "nr")]
    Nr,
    #[serde(rename = "sr-loc")]
    SrLoc,
    #[serde(rename = "nr-loc")]
    NrLoc,
    #[serde(rename = "brute")]
    Brute,
}

impl Strategy {
    pub const HEURISTICS: [Strategy; 4] = [Strategy::Sr, Strategy::SrLoc, Strategy::Nr, Strategy::NrLoc];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Sr => "sr",
            Strategy::Nr => "nr",
            Strategy::SrLoc => "sr-loc",
            Strategy::NrLoc => "nr-loc",
            Strategy::Brute => "brute",
        }
    }

    /// Runs the strategy. `brute_cap` only matters for [`Strategy::Brute`].
    pub fn solve(
        self,
        inst: &Instance,
        params: &SearchParams,
        budget: &Budget,
        seed: u64,
        brute_cap: u128,
    ) -> Result<SolveResult> {
        Ok(match self {
            Strategy::Sr => run_random(inst, Generator::Uniform, budget, seed),
            Strategy::Nr => run_random(inst, Generator::Nr, budget, seed),
            Strategy::SrLoc => run_restarts(inst, Generator::Uniform, params, budget, seed),
            Strategy::NrLoc => run_restarts(inst, Generator::Nr, params, budget, seed),
            Strategy::Brute => brute_force(inst, brute_cap)?,
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sr" => Strategy::Sr,
            "nr" => Strategy::Nr,
            "sr-loc" => Strategy::SrLoc,
            "nr-loc" => Strategy::NrLoc,
            "brute" => Strategy::Brute,
            other => return Err(Error::UnknownStrategy(other.to_owned())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::Sr, Strategy::Nr, Strategy::SrLoc, Strategy::NrLoc, Strategy::Brute] {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!(matches!("sa".parse::<Strategy>(), Err(Error::UnknownStrategy(_))));
    }
}
