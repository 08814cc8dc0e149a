//! Partition as a belt instance.
//!
//! Each value becomes a single-mould type with that demand, and `slots - 2`
//! filler types of demand `sum / 2` take the remaining slots. A perfect
//! split exists exactly when the belt can finish in `slots * sum / 2 +
//! slots - 1` steps: the fillers pin one slot each for `sum / 2` rounds and
//! the two free slots must each carry half of the values.

use crate::error::{Error, Result};
use crate::model::{Instance, InstanceFile, TypeEntry, validate_instance};
use crate::solvers::brute_force;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u32>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::InvalidInstance(
                "partition values must be a non-empty list of positive integers".into(),
            ));
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    /// `None` when the sum is odd.
    pub instance: Option<Instance>,
    pub threshold: Option<u64>,
    pub trivially_no: bool,
}

pub fn filler_id(k: usize) -> String {
    format!("__filler_{k}")
}

pub fn value_id(i: usize) -> String {
    format!("v{i}")
}

pub fn reduce_partition(p: &PartitionInstance, slots: u32) -> Result<ReductionOutput> {
    if slots < 2 {
        return Err(Error::InvalidSlots(slots));
    }
    let sum = p.sum();
    if sum % 2 == 1 {
        return Ok(ReductionOutput {
            instance: None,
            threshold: None,
            trivially_no: true,
        });
    }
    let half = sum / 2;
    let mut types: Vec<TypeEntry> = p
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| TypeEntry {
            id: value_id(i),
            demand: i64::from(v),
            capacity: 1,
        })
        .collect();
    types.extend((0..slots as usize - 2).map(|k| TypeEntry {
        id: filler_id(k),
        demand: half as i64,
        capacity: 1,
    }));
    let (instance, _) = validate_instance(&InstanceFile {
        slots: i64::from(slots),
        types,
    })?;
    let n = u64::from(slots);
    Ok(ReductionOutput {
        instance: Some(instance),
        threshold: Some(n * half + n - 1),
        trivially_no: false,
    })
}

/// Subset-sum dynamic program over reachable sums.
pub fn subset_sum_oracle(p: &PartitionInstance) -> bool {
    let sum = p.sum();
    if sum % 2 == 1 {
        return false;
    }
    let half = (sum / 2) as usize;
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for &v in &p.values {
        let v = v as usize;
        for s in (v..=half).rev() {
            if reachable[s - v] {
                reachable[s] = true;
            }
        }
    }
    reachable[half]
}

/// Decides Partition by solving the reduced belt instance exactly.
pub fn decide_partition_via_belt(p: &PartitionInstance, slots: u32, cap: u128) -> Result<bool> {
    Ok(belt_optimum(p, slots, cap)?.is_some_and(|(opt, threshold)| opt == threshold))
}

/// `(optimum, threshold)` of the reduced instance, `None` for odd sums.
pub fn belt_optimum(p: &PartitionInstance, slots: u32, cap: u128) -> Result<Option<(u64, u64)>> {
    let out = reduce_partition(p, slots)?;
    let (Some(inst), Some(threshold)) = (out.instance, out.threshold) else {
        return Ok(None);
    };
    let opt = brute_force(&inst, cap)?.best_makespan;
    Ok(Some((opt, threshold)))
}
