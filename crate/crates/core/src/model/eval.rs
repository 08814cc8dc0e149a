use super::instance::{Instance, TypeIndex};

const EMPTY: u32 = u32::MAX;

/// Allocation-free makespan evaluation for the solver hot loop.
///
/// Simulates only the feed-in slot over a ring of one rotation, so memory is
/// `O(slots + types)` regardless of the makespan. Sequences are trusted to
/// satisfy the count invariants; [`super::decode`] is the checked route.
#[derive(Debug, Clone)]
pub struct Evaluator {
    slots: usize,
    demand: Vec<u32>,
    total: u64,
    ring: Vec<u32>,
    produced: Vec<u32>,
    scratch: Vec<u32>,
}

impl Evaluator {
    pub fn new(inst: &Instance) -> Self {
        let slots = inst.slots() as usize;
        Evaluator {
            slots,
            demand: inst.types().iter().map(|t| t.demand).collect(),
            total: inst.total_demand(),
            ring: vec![EMPTY; slots],
            produced: vec![0; inst.type_count()],
            scratch: Vec::new(),
        }
    }

    pub fn makespan(&mut self, seq: &[TypeIndex]) -> u64 {
        self.ring.fill(EMPTY);
        self.produced.fill(0);
        let mut remaining = self.total;
        let mut next = 0usize;
        let mut step = 0u64;
        let mut slot = 0usize;
        let mut unchanged_round = false;
        loop {
            if slot == 0 && unchanged_round {
                // the last rotation repeated the one before; repeat it again
                // for as long as no type can run out of demand
                let rounds = self.stable_rounds();
                if rounds > 0 {
                    let mut per_round = 0u64;
                    for &t in &self.ring {
                        if t != EMPTY {
                            self.produced[t as usize] += rounds as u32;
                            per_round += 1;
                        }
                    }
                    remaining -= per_round * rounds;
                    step += rounds * self.slots as u64;
                }
            }
            if slot == 0 {
                unchanged_round = true;
            }

            let mut cand = self.ring[slot];
            if cand == EMPTY || self.produced[cand as usize] == self.demand[cand as usize] {
                if next < seq.len() || cand != EMPTY {
                    unchanged_round = false;
                }
                loop {
                    match seq.get(next) {
                        Some(t) => {
                            cand = t.0;
                            next += 1;
                            if self.produced[cand as usize] < self.demand[cand as usize] {
                                break;
                            }
                        }
                        None => {
                            cand = EMPTY;
                            break;
                        }
                    }
                }
            }
            self.ring[slot] = cand;
            if cand != EMPTY {
                self.produced[cand as usize] += 1;
                remaining -= 1;
                if remaining == 0 {
                    return step + self.slots as u64;
                }
            }
            step += 1;
            slot += 1;
            if slot == self.slots {
                slot = 0;
            }
        }
    }

    /// Whole rotations that can be replayed without any type meeting its
    /// demand, given the ring content of the last rotation.
    fn stable_rounds(&mut self) -> u64 {
        let mut occupied = std::mem::take(&mut self.scratch);
        occupied.clear();
        occupied.resize(self.demand.len(), 0);
        for &t in &self.ring {
            if t != EMPTY {
                occupied[t as usize] += 1;
            }
        }
        let mut rounds = u64::MAX;
        for (t, &m) in occupied.iter().enumerate() {
            if m > 0 {
                let left = u64::from(self.demand[t] - self.produced[t]);
                rounds = rounds.min(left.saturating_sub(1) / u64::from(m));
            }
        }
        self.scratch = occupied;
        if rounds == u64::MAX {
            0
        } else {
            rounds
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{decode, InjectionSequence};

    #[test]
    fn matches_decoder_on_reference_sequences() {
        let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap();
        let mut ev = Evaluator::new(&inst);
        for ids in [["B", "A", "A"], ["A", "B", "A"], ["A", "A", "B"]] {
            let seq = InjectionSequence::from_ids(&inst, &ids).unwrap();
            let expected = decode(&inst, &seq).unwrap().makespan(&inst).unwrap();
            assert_eq!(ev.makespan(seq.entries()), expected);
        }
    }
}
