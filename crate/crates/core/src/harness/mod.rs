//! Corpus benchmarks: per-job statistics, cumulated ratios against the lower
//! bound and the human baseline, histograms, the validation fit and load
//! series.

mod bench;
mod output;
mod stats;

pub use bench::{
    benchmark_jobs, run_benchmark, BenchConfig, BenchReport, Cumulated, JobRecord, StrategyStats,
    DEFAULT_BRUTE_CAP, DEFAULT_REPEATS, DEFAULT_SEQUENCE_BUDGET, DEFAULT_WALL_MS,
};
pub use output::{
    gaps, histogram_csv, human_gaps, report_csv, saved_steps, write_outputs, HISTOGRAM_BIN_WIDTH,
};
pub use stats::{fit_least_squares, histogram, load_series, LinearFit};
