//! Decide Partition through the belt problem and compare with subset sum.
//!
//! cargo run --example partition_reduction -- 3,1,1,2,2,1

use belt_makespan::hardness::{belt_optimum, reduce_partition, subset_sum_oracle, PartitionInstance};

fn main() -> belt_makespan::Result<()> {
    let values: Vec<u32> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "3,1,1,2,2,1".into())
        .split(',')
        .map(|v| v.trim().parse().expect("positive integers"))
        .collect();
    let p = PartitionInstance::new(values)?;
    let slots = 3;

    let out = reduce_partition(&p, slots)?;
    if out.trivially_no {
        println!("odd sum {}: no partition", p.sum());
        return Ok(());
    }
    let inst = out.instance.expect("even sum reduces");
    for t in inst.types() {
        println!("{:>10}  demand {:>3}  capacity {}", t.id, t.demand, t.capacity);
    }
    let (opt, threshold) = belt_optimum(&p, slots, 10_000_000)?.expect("even sum");
    println!("belt optimum {opt}, threshold {threshold}");
    println!("partition via belt: {}", opt == threshold);
    println!("subset sum oracle:  {}", subset_sum_oracle(&p));
    Ok(())
}
