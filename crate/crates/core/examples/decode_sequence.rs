//! Decode an injection sequence into the feed-in slot content per step.
//!
//! cargo run --example decode_sequence

use belt_makespan::model::{decode, short_injection_sequence, InjectionSequence, Instance};

fn main() -> belt_makespan::Result<()> {
    // three slots, A needs 4 items and has 2 moulds, B needs 3 and has 1
    let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)])?;

    for ids in [["A", "A", "B"], ["B", "A", "A"]] {
        let seq = InjectionSequence::from_ids(&inst, &ids)?;
        let belt = decode(&inst, &seq)?;
        let report = belt.check(&inst);
        println!("sequence {:?}", ids);
        println!("  belt     {}", belt.render(&inst));
        println!("  makespan {}", belt.makespan(&inst)?);
        println!("  load     {:?}", belt.load_profile().per_round);
        println!("  normal form: {}", report.all_ok());
        let short = short_injection_sequence(&inst, &belt)?;
        println!("  short    {:?}", short.ids(&inst).collect::<Vec<_>>());
    }
    Ok(())
}
