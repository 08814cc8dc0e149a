use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping criterion: a number of evaluated sequences, a wall-clock
/// allowance, or both (whichever triggers first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    max_sequences: Option<u64>,
    max_wall_ms: Option<u64>,
}

impl Budget {
    pub fn new(max_sequences: Option<u64>, max_wall_ms: Option<u64>) -> Result<Self> {
        if max_sequences.is_none() && max_wall_ms.is_none() {
            return Err(Error::InvalidParams(
                "a budget needs a sequence limit or a time limit".into(),
            ));
        }
        Ok(Budget {
            max_sequences,
            max_wall_ms,
        })
    }

    pub fn sequences(n: u64) -> Self {
        Budget {
            max_sequences: Some(n),
            max_wall_ms: None,
        }
    }

    pub fn wall_ms(ms: u64) -> Self {
        Budget {
            max_sequences: None,
            max_wall_ms: Some(ms),
        }
    }

    pub fn max_sequences(&self) -> Option<u64> {
        self.max_sequences
    }

    pub fn max_wall_ms(&self) -> Option<u64> {
        self.max_wall_ms
    }

    /// Results depend only on the seed when no time limit is set.
    pub fn is_deterministic(&self) -> bool {
        self.max_wall_ms.is_none()
    }

    pub(crate) fn start(&self) -> Tracker {
        Tracker {
            limit: self.max_sequences,
            deadline: self.max_wall_ms.map(Duration::from_millis),
            started: Instant::now(),
            evaluated: 0,
        }
    }
}

/// Counts evaluations against a [`Budget`]. Checked between evaluations only.
#[derive(Debug)]
pub(crate) struct Tracker {
    limit: Option<u64>,
    deadline: Option<Duration>,
    started: Instant,
    evaluated: u64,
}

impl Tracker {
    pub(crate) fn unlimited() -> Self {
        Tracker {
            limit: None,
            deadline: None,
            started: Instant::now(),
            evaluated: 0,
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        if self.limit.is_some_and(|l| self.evaluated >= l) {
            return true;
        }
        self.deadline.is_some_and(|d| self.started.elapsed() >= d)
    }

    pub(crate) fn charge(&mut self) {
        self.evaluated += 1;
    }

    pub(crate) fn evaluated(&self) -> u64 {
        self.evaluated
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }
}

/// Local-search shape: `steps` rounds of `swaps` candidate swaps each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub steps: u32,
    pub swaps: u32,
}

impl SearchParams {
    pub fn new(steps: u32, swaps: u32) -> Result<Self> {
        if swaps == 0 {
            return Err(Error::InvalidParams("swaps must be at least 1".into()));
        }
        Ok(SearchParams { steps, swaps })
    }
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            steps: 10,
            swaps: 10,
        }
    }
}
