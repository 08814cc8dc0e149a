//! Lower and worst-case makespan bounds next to the exact optimum.
//!
//! cargo run --example bounds

use belt_makespan::model::{critical_rounds, lower_bound, worst_case_bound, Instance};
use belt_makespan::solvers::{brute_force, distinct_permutations};

fn main() -> belt_makespan::Result<()> {
    let cases = [
        Instance::new(3, [("A", 4, 2), ("B", 3, 1)])?,
        Instance::new(4, [("A", 6, 1), ("B", 2, 2), ("C", 5, 3)])?,
        Instance::new(2, [("A", 5, 2), ("B", 5, 1)])?,
    ];
    println!("{:>3} {:>5} {:>4} {:>5} {:>5} {:>6}", "N", "perms", "r*", "lower", "opt", "worst");
    for inst in &cases {
        let opt = brute_force(inst, 1_000_000)?;
        println!(
            "{:>3} {:>5} {:>4} {:>5} {:>5} {:>6}",
            inst.slots(),
            distinct_permutations(inst),
            critical_rounds(inst),
            lower_bound(inst),
            opt.best_makespan,
            worst_case_bound(inst)
        );
    }
    Ok(())
}
