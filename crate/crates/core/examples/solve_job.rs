//! Run every strategy on one instance, optionally loaded from a JSON file.
//!
//! cargo run --release --example solve_job -- [instance.json] [budget]

use belt_makespan::model::{lower_bound, Instance};
use belt_makespan::solvers::{Budget, SearchParams, Strategy};

fn main() -> belt_makespan::Result<()> {
    let mut args = std::env::args().skip(1);
    let inst = match args.next() {
        Some(path) => {
            let (inst, warnings) = Instance::load(&path)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            inst
        }
        None => Instance::new(
            20,
            [("T1", 180, 3), ("T2", 95, 2), ("T3", 240, 6), ("T4", 60, 1), ("T5", 130, 5)],
        )?,
    };
    let budget = Budget::sequences(args.next().and_then(|s| s.parse().ok()).unwrap_or(2000));
    let params = SearchParams::default();

    println!("lower bound {}", lower_bound(&inst));
    for s in Strategy::HEURISTICS {
        let r = s.solve(&inst, &params, &budget, 7, 0)?;
        println!(
            "{:>7}: makespan {} after {} sequences, e.g. {}",
            s,
            r.best_makespan,
            r.sequences_evaluated,
            r.best_sequence.ids(&inst).collect::<Vec<_>>().join(" ")
        );
    }
    Ok(())
}
