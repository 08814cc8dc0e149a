use rand::Rng;

use super::budget::{Budget, SearchParams, Tracker};
use super::generate::{uniform_sequence, NrSampler};
use super::{rng_from_seed, SolveResult};
use crate::model::{Evaluator, InjectionSequence, Instance};

/// Which distribution the randomized solvers draw sequences from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Uniform,
    Nr,
}

enum Source {
    Uniform,
    Nr(NrSampler),
}

impl Source {
    fn new(inst: &Instance, generator: Generator) -> Self {
        match generator {
            Generator::Uniform => Source::Uniform,
            Generator::Nr => Source::Nr(NrSampler::new(inst)),
        }
    }

    fn draw<R: Rng + ?Sized>(&mut self, inst: &Instance, rng: &mut R) -> InjectionSequence {
        match self {
            Source::Uniform => uniform_sequence(inst, rng),
            Source::Nr(s) => s.sample(rng),
        }
    }
}

/// Best-so-far bookkeeping; only strict improvements replace the incumbent.
struct Incumbent {
    sequence: Option<InjectionSequence>,
    makespan: u64,
}

impl Incumbent {
    fn new() -> Self {
        Incumbent {
            sequence: None,
            makespan: u64::MAX,
        }
    }

    fn offer(&mut self, seq: &InjectionSequence, makespan: u64) {
        if makespan < self.makespan {
            self.makespan = makespan;
            self.sequence = Some(seq.clone());
        }
    }

    fn into_result(self, tracker: &Tracker, seed: Option<u64>) -> SolveResult {
        SolveResult {
            best_sequence: self.sequence.expect("at least one sequence is evaluated"),
            best_makespan: self.makespan,
            sequences_evaluated: tracker.evaluated(),
            elapsed_ms: tracker.elapsed_ms(),
            seed,
        }
    }
}

/// Draws sequences until the budget runs out and keeps the best.
///
/// At least one sequence is always evaluated.
pub fn run_random(inst: &Instance, generator: Generator, budget: &Budget, seed: u64) -> SolveResult {
    let mut rng = rng_from_seed(seed);
    let mut source = Source::new(inst, generator);
    let mut eval = Evaluator::new(inst);
    let mut tracker = budget.start();
    let mut best = Incumbent::new();
    loop {
        let seq = source.draw(inst, &mut rng);
        let ms = eval.makespan(seq.entries());
        tracker.charge();
        best.offer(&seq, ms);
        if tracker.exhausted() {
            break;
        }
    }
    best.into_result(&tracker, Some(seed))
}

/// Swap-based local search from `initial`, returning the best sequence visited.
///
/// Each of `params.steps` rounds tries `params.swaps` random position pairs and
/// moves to the best of them, even when that is worse than the current
/// sequence. The initial sequence counts as visited, so the result is never
/// worse than it.
pub fn local_search<R: Rng + ?Sized>(
    inst: &Instance,
    initial: &InjectionSequence,
    params: &SearchParams,
    rng: &mut R,
) -> SolveResult {
    let mut eval = Evaluator::new(inst);
    let mut tracker = Tracker::unlimited();
    let mut best = Incumbent::new();
    let ms = eval.makespan(initial.entries());
    tracker.charge();
    best.offer(initial, ms);
    descend(&mut eval, initial.clone(), params, rng, &mut tracker, &mut best);
    best.into_result(&tracker, None)
}

fn descend<R: Rng + ?Sized>(
    eval: &mut Evaluator,
    mut current: InjectionSequence,
    params: &SearchParams,
    rng: &mut R,
    tracker: &mut Tracker,
    best: &mut Incumbent,
) {
    let len = current.len();
    for _ in 0..params.steps {
        let mut step_best: Option<(usize, usize, u64)> = None;
        for _ in 0..params.swaps {
            if tracker.exhausted() {
                break;
            }
            let a = rng.random_range(0..len);
            let b = rng.random_range(0..len);
            let entries = current.entries_mut();
            entries.swap(a, b);
            let ms = eval.makespan(entries);
            entries.swap(a, b);
            tracker.charge();
            if step_best.is_none_or(|(_, _, m)| ms < m) {
                step_best = Some((a, b, ms));
            }
        }
        let Some((a, b, ms)) = step_best else { return };
        current.entries_mut().swap(a, b);
        best.offer(&current, ms);
        if tracker.exhausted() {
            return;
        }
    }
}

/// Random restarts: draw an initial sequence, run local search from it, and
/// repeat until the budget runs out. Every evaluated sequence, initial or
/// swap candidate, is charged to the budget.
pub fn run_restarts(
    inst: &Instance,
    generator: Generator,
    params: &SearchParams,
    budget: &Budget,
    seed: u64,
) -> SolveResult {
    let mut rng = rng_from_seed(seed);
    let mut source = Source::new(inst, generator);
    let mut eval = Evaluator::new(inst);
    let mut tracker = budget.start();
    let mut best = Incumbent::new();
    loop {
        let initial = source.draw(inst, &mut rng);
        let ms = eval.makespan(initial.entries());
        tracker.charge();
        best.offer(&initial, ms);
        if tracker.exhausted() {
            break;
        }
        descend(&mut eval, initial, params, &mut rng, &mut tracker, &mut best);
        if tracker.exhausted() {
            break;
        }
    }
    best.into_result(&tracker, Some(seed))
}
