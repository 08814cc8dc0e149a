//! Improve a single random sequence by swap local search and print the trace
//! of best makespans for growing step counts.
//!
//! cargo run --example local_search

use belt_makespan::model::{lower_bound, Evaluator, Instance};
use belt_makespan::solvers::{local_search, nr_sequence, rng_from_seed, SearchParams};

fn main() -> belt_makespan::Result<()> {
    let inst = Instance::new(6, [("A", 40, 2), ("B", 9, 3), ("C", 25, 1), ("D", 14, 2)])?;
    let start = nr_sequence(&inst, &mut rng_from_seed(1));
    let start_ms = Evaluator::new(&inst).makespan(start.entries());
    println!("lower bound {}, start {start_ms}", lower_bound(&inst));

    for steps in [0, 1, 2, 5, 10, 20] {
        let params = SearchParams::new(steps, 10)?;
        let r = local_search(&inst, &start, &params, &mut rng_from_seed(2));
        println!("steps {steps:>2}: {} ({} sequences)", r.best_makespan, r.sequences_evaluated);
    }
    Ok(())
}
