//! Generate a synthetic corpus and benchmark the four heuristics on it.
//!
//! cargo run --release --example corpus_benchmark -- [jobs] [out-dir]
//!
//! With 349 jobs this is the default corpus; expect a few minutes.

use std::path::PathBuf;

use belt_makespan::data::{generate_corpus, CorpusDir, CorpusProfile};
use belt_makespan::harness::{run_benchmark, write_outputs, BenchConfig};
use belt_makespan::solvers::Budget;

fn main() -> belt_makespan::Result<()> {
    let mut args = std::env::args().skip(1);
    let jobs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(40);
    let out: PathBuf = args.next().unwrap_or_else(|| "bench-out".into()).into();

    let defaults = CorpusProfile::default();
    let profile = CorpusProfile {
        job_count: jobs,
        // keep the per-job demand of the full corpus
        demand_mean: defaults.demand_mean,
        ..defaults
    };
    let corpus = CorpusDir::new(out.join("corpus"));
    corpus.write(Some(&profile), &generate_corpus(&profile)?)?;

    let config = BenchConfig {
        budget: Budget::sequences(500),
        repeats: 3,
        seed: 1,
        load_jobs: vec!["job-0001".into()],
        ..BenchConfig::default()
    };
    let report = run_benchmark(&corpus, &config)?;
    write_outputs(&out.join("results"), &report)?;

    for (name, c) in &report.cumulated {
        println!(
            "{name:>7}: {:.4} of lower bound, {:.4} of human",
            c.ratio_vs_lower_bound,
            c.ratio_vs_human.unwrap_or(f64::NAN)
        );
    }
    if let Some(h) = report.human_ratio_vs_lower_bound {
        println!("  human: {h:.4} of lower bound");
    }
    if let Some(fit) = &report.validation_fit {
        println!("adjusted time ~ {:.2} * makespan + {:.1}", fit.slope, fit.intercept);
    }
    println!("results in {}", out.join("results").display());
    Ok(())
}
