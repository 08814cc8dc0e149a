//! Per-round belt load of a poor and a good sequence for the same job.
//!
//! cargo run --example load_series

use belt_makespan::harness::load_series;
use belt_makespan::model::{decode, lower_bound, InjectionSequence, Instance};
use belt_makespan::solvers::{run_restarts, Budget, Generator, SearchParams};

fn main() -> belt_makespan::Result<()> {
    let inst = Instance::new(6, [("A", 24, 2), ("B", 12, 3), ("C", 6, 1)])?;
    // A needs the most rounds; injecting it last delays the finish
    let poor = InjectionSequence::from_ids(&inst, &["B", "B", "B", "C", "A", "A"])?;
    let good = run_restarts(&inst, Generator::Nr, &SearchParams::default(), &Budget::sequences(500), 3).best_sequence;

    println!("lower bound {}", lower_bound(&inst));
    for (name, seq) in [("poor", &poor), ("good", &good)] {
        let load = load_series(&inst, seq)?;
        println!("{name}: {:?}", seq.ids(&inst).collect::<Vec<_>>());
        let makespan = decode(&inst, seq)?.makespan(&inst)?;
        println!("  makespan {makespan}, load per round {:?}", load.per_round);
    }
    Ok(())
}
