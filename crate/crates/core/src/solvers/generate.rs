use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{InjectionSequence, Instance, TypeIndex};

/// Uniformly random arrangement of the full mould multiset.
pub fn uniform_sequence<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> InjectionSequence {
    let mut seq = InjectionSequence::all_moulds(inst);
    seq.entries_mut().shuffle(rng);
    seq
}

/// Draws full sequences where a type with moulds left is picked with
/// probability proportional to `demand / capacity`.
///
/// Types that need many rounds per mould are pushed towards the front.
#[derive(Debug, Clone)]
pub struct NrSampler {
    weights: Vec<f64>,
    capacity: Vec<u32>,
    initial_total: f64,
    left: Vec<u32>,
}

impl NrSampler {
    pub fn new(inst: &Instance) -> Self {
        let weights: Vec<f64> = inst
            .types()
            .iter()
            .map(|t| f64::from(t.demand) / f64::from(t.capacity))
            .collect();
        NrSampler {
            initial_total: weights.iter().sum(),
            capacity: inst.types().iter().map(|t| t.capacity).collect(),
            left: vec![0; weights.len()],
            weights,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> InjectionSequence {
        let len: usize = self.capacity.iter().map(|&c| c as usize).sum();
        let mut out = Vec::with_capacity(len);
        self.left.copy_from_slice(&self.capacity);
        let mut total = self.initial_total;
        for _ in 0..len {
            let chosen = self.pick(rng.random::<f64>() * total);
            out.push(TypeIndex(chosen as u32));
            self.left[chosen] -= 1;
            if self.left[chosen] == 0 {
                total -= self.weights[chosen];
            }
        }
        InjectionSequence::from_raw(out)
    }

    /// Roulette selection over types with moulds left; rounding drift in the
    /// running total falls back to the last eligible type.
    fn pick(&self, mut target: f64) -> usize {
        let mut last = usize::MAX;
        for (i, &w) in self.weights.iter().enumerate() {
            if self.left[i] == 0 {
                continue;
            }
            last = i;
            if target < w {
                return i;
            }
            target -= w;
        }
        debug_assert!(last != usize::MAX, "no type has moulds left");
        last
    }
}

pub fn nr_sequence<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> InjectionSequence {
    NrSampler::new(inst).sample(rng)
}
