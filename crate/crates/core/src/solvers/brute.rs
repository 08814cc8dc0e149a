use std::time::Instant;

use super::SolveResult;
use crate::error::{Error, Result};
use crate::model::{Evaluator, InjectionSequence, Instance};

/// Number of distinct arrangements of the full mould multiset, saturating at
/// `u128::MAX`.
pub fn distinct_permutations(inst: &Instance) -> u128 {
    // multinomial built up one type at a time: C(placed + c, c) per type
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for t in inst.types() {
        for k in 1..=u128::from(t.capacity) {
            placed += 1;
            let Some(next) = count.checked_mul(placed) else {
                return u128::MAX;
            };
            count = next / k;
        }
    }
    count
}

/// Rearranges `v` into the next lexicographic permutation; false once `v` is
/// the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exact optimum over all full injection sequences by enumeration.
///
/// Every normal-form assignment is the decoding of some full sequence, so the
/// minimum found here is the optimal makespan. Fails with `TooLarge` when the
/// number of distinct arrangements exceeds `cap`.
pub fn brute_force(inst: &Instance, cap: u128) -> Result<SolveResult> {
    let count = distinct_permutations(inst);
    if count > cap {
        return Err(Error::TooLarge { count, cap });
    }
    let started = Instant::now();
    let mut eval = Evaluator::new(inst);
    // all_moulds lists types in index order, which is already sorted
    let mut entries = InjectionSequence::all_moulds(inst).entries().to_vec();
    let mut best = (u64::MAX, entries.clone());
    let mut evaluated = 0u64;
    loop {
        let ms = eval.makespan(&entries);
        evaluated += 1;
        if ms < best.0 {
            best = (ms, entries.clone());
        }
        if !next_permutation(&mut entries) {
            break;
        }
    }
    Ok(SolveResult {
        best_sequence: InjectionSequence::from_raw(best.1),
        best_makespan: best.0,
        sequences_evaluated: evaluated,
        elapsed_ms: started.elapsed().as_millis() as u64,
        seed: None,
    })
}
