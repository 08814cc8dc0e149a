//! Synthesize a press-exit log with a stoppage, then reconcile it against an
//! instance that understates one capacity.
//!
//! cargo run --example ingest_log

use belt_makespan::data::{computed_makespan, ingest_log, synthesize_log, IdleGap, DEFAULT_IDLE_THRESHOLD_S};
use belt_makespan::model::{decode, InjectionSequence, Instance};

fn main() -> belt_makespan::Result<()> {
    let actual = Instance::new(4, [("A", 9, 2), ("B", 5, 1), ("C", 3, 1)])?;
    let declared = Instance::new(4, [("A", 9, 1), ("B", 5, 1), ("C", 3, 1)])?;
    let seq = InjectionSequence::from_ids(&actual, &["A", "B", "A", "C"])?;
    let belt = decode(&actual, &seq)?;

    // a 45 minute stoppage after the fifth feed-in step
    let gaps = [IdleGap { after_step: 5, seconds: 2700.0 }];
    let log = synthesize_log("demo", &actual, &belt, 0.0, 20.0, &gaps);
    print!("{}", log.to_csv());

    let res = ingest_log(&log, &declared, DEFAULT_IDLE_THRESHOLD_S)?;
    println!();
    println!("raw {} s, adjusted {} s", log.raw_duration(), res.adjusted_time);
    println!("idle periods {:?}", res.idle_periods);
    println!("human sequence {:?}", res.human_sequence.ids(&res.instance).collect::<Vec<_>>());
    println!("computed makespan {}", computed_makespan(&res)?);
    for note in &res.inconsistencies {
        println!("note: {note}");
    }
    Ok(())
}
