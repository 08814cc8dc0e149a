use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{fit_least_squares, LinearFit};
use crate::data::{computed_makespan, ingest_log, CorpusDir, Job, DEFAULT_IDLE_THRESHOLD_S};
use crate::error::{Error, Result};
use crate::model::{decode, lower_bound, worst_case_bound, InjectionSequence, Instance};
use crate::solvers::{substream_seed, Budget, SearchParams, Strategy};

/// Sequence budget used when no limit is given; the time-based alternative
/// is [`BenchConfig::wall_clock`].
pub const DEFAULT_SEQUENCE_BUDGET: u64 = 2_000;
pub const DEFAULT_WALL_MS: u64 = 1_000;
pub const DEFAULT_REPEATS: u32 = 10;
pub const DEFAULT_BRUTE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub strategies: Vec<Strategy>,
    pub budget: Budget,
    pub repeats: u32,
    pub seed: u64,
    pub params: SearchParams,
    pub idle_threshold: f64,
    pub brute_cap: u128,
    /// Jobs whose per-round load is recorded for every strategy.
    #[serde(default)]
    pub load_jobs: Vec<String>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            strategies: Strategy::HEURISTICS.to_vec(),
            budget: Budget::sequences(DEFAULT_SEQUENCE_BUDGET),
            repeats: DEFAULT_REPEATS,
            seed: 0,
            params: SearchParams::default(),
            idle_threshold: DEFAULT_IDLE_THRESHOLD_S,
            brute_cap: DEFAULT_BRUTE_CAP,
            load_jobs: Vec::new(),
        }
    }
}

impl BenchConfig {
    /// One second per job and strategy.
    /// Results then depend on machine speed.
    pub fn wall_clock() -> Self {
        BenchConfig {
            budget: Budget::wall_ms(DEFAULT_WALL_MS),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats < 1 {
            return Err(Error::InvalidParams("repeats must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidParams("no strategies selected".into()));
        }
        SearchParams::new(self.params.steps, self.params.swaps)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyStats {
    pub mean: f64,
    pub min: u64,
    pub max: u64,
    /// Population standard deviation over the repeats.
    pub std: f64,
    /// `human - mean`, when the job has a human baseline.
    pub saved_steps: Option<f64>,
    /// `mean - lower_bound`.
    pub gap: f64,
    pub best_sequence: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobRecord {
    pub job_id: String,
    pub lower_bound: u64,
    pub worst_case_bound: u64,
    pub human_makespan: Option<u64>,
    pub human_sequence: Option<Vec<String>>,
    pub adjusted_time: Option<f64>,
    pub inconsistencies: Vec<String>,
    pub strategies: BTreeMap<String, StrategyStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cumulated {
    /// Sum over all jobs of the per-job mean makespan.
    pub makespan_sum: f64,
    pub ratio_vs_lower_bound: f64,
    /// Over jobs with a human baseline only.
    pub ratio_vs_human: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub jobs: Vec<JobRecord>,
    pub lower_bound_sum: u64,
    pub human_jobs: usize,
    pub human_sum: Option<u64>,
    pub human_ratio_vs_lower_bound: Option<f64>,
    pub cumulated: BTreeMap<String, Cumulated>,
    pub validation_fit: Option<LinearFit>,
    /// Per listed job: series name (`human` or a strategy) to per-round load.
    pub load_series: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
    pub notes: Vec<String>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialises");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

struct JobOutcome {
    record: JobRecord,
    fit_point: Option<(f64, f64)>,
    loads: Option<BTreeMap<String, Vec<u32>>>,
}

pub fn run_benchmark(corpus: &CorpusDir, config: &BenchConfig) -> Result<BenchReport> {
    benchmark_jobs(&corpus.read()?, config)
}

/// Runs every strategy `repeats` times on every job and aggregates.
///
/// Jobs run in parallel; each (job, strategy, repeat) triple has its own seed,
/// and all sums are taken in job order, so the report does not depend on
/// scheduling.
pub fn benchmark_jobs(jobs: &[Job], config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let outcomes = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| run_job(i, job, config))
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::with_capacity(outcomes.len());
    let mut points = Vec::new();
    let mut load_series = BTreeMap::new();
    for o in outcomes {
        if let Some(p) = o.fit_point {
            points.push(p);
        }
        if let Some(l) = o.loads {
            load_series.insert(o.record.job_id.clone(), l);
        }
        records.push(o.record);
    }

    let lower_bound_sum: u64 = records.iter().map(|r| r.lower_bound).sum();
    let with_human: Vec<&JobRecord> = records.iter().filter(|r| r.human_makespan.is_some()).collect();
    let human_sum = (!with_human.is_empty())
        .then(|| with_human.iter().filter_map(|r| r.human_makespan).sum::<u64>());
    let human_lb: u64 = with_human.iter().map(|r| r.lower_bound).sum();

    let mut cumulated = BTreeMap::new();
    for s in &config.strategies {
        let name = s.name();
        let makespan_sum: f64 = records.iter().map(|r| r.strategies[name].mean).sum();
        let on_human: f64 = with_human.iter().map(|r| r.strategies[name].mean).sum();
        cumulated.insert(
            name.to_owned(),
            Cumulated {
                makespan_sum,
                ratio_vs_lower_bound: makespan_sum / lower_bound_sum as f64,
                ratio_vs_human: human_sum.map(|h| on_human / h as f64),
            },
        );
    }

    let mut notes = Vec::new();
    let missing = records.len() - with_human.len();
    if missing > 0 {
        notes.push(format!(
            "{missing} of {} jobs have no log; they are excluded from human-relative ratios \
             and included in lower-bound ratios",
            records.len()
        ));
    }

    Ok(BenchReport {
        config: config.clone(),
        lower_bound_sum,
        human_jobs: with_human.len(),
        human_sum,
        human_ratio_vs_lower_bound: human_sum.map(|h| h as f64 / human_lb as f64),
        cumulated,
        validation_fit: fit_least_squares(&points).ok(),
        load_series,
        notes,
        jobs: records,
    })
}

fn run_job(index: usize, job: &Job, config: &BenchConfig) -> Result<JobOutcome> {
    let mut inconsistencies = Vec::new();
    let mut human: Option<(InjectionSequence, u64)> = None;
    let mut adjusted_time = None;
    let inst: Instance = match &job.log {
        Some(log) => {
            let ingested = ingest_log(log, &job.declared, config.idle_threshold)?;
            let computed = computed_makespan(&ingested)?;
            adjusted_time = Some(ingested.adjusted_time);
            inconsistencies = ingested.inconsistencies;
            human = Some((ingested.human_sequence, computed));
            ingested.instance
        }
        None => job.declared.clone(),
    };
    let lb = lower_bound(&inst);
    let wc = worst_case_bound(&inst);
    let human_makespan = human.as_ref().map(|h| h.1);

    let repeats = u64::from(config.repeats);
    let mut strategies = BTreeMap::new();
    let mut best_sequences = Vec::new();
    for (k, &strategy) in config.strategies.iter().enumerate() {
        let mut values = Vec::with_capacity(config.repeats as usize);
        let mut best: Option<(u64, InjectionSequence)> = None;
        for r in 0..repeats {
            let trial = (index as u64 * config.strategies.len() as u64 + k as u64) * repeats + r;
            let seed = substream_seed(config.seed, trial);
            let res = strategy.solve(&inst, &config.params, &config.budget, seed, config.brute_cap)?;
            values.push(res.best_makespan);
            if best.as_ref().is_none_or(|b| res.best_makespan < b.0) {
                best = Some((res.best_makespan, res.best_sequence));
            }
        }
        let (_, best_seq) = best.expect("repeats >= 1");
        let n = values.len() as f64;
        let mean = values.iter().map(|&v| v as f64).sum::<f64>() / n;
        let std = (values.iter().map(|&v| (v as f64 - mean).powi(2)).sum::<f64>() / n).sqrt();
        strategies.insert(
            strategy.name().to_owned(),
            StrategyStats {
                mean,
                min: *values.iter().min().expect("non-empty"),
                max: *values.iter().max().expect("non-empty"),
                std,
                saved_steps: human_makespan.map(|h| h as f64 - mean),
                gap: mean - lb as f64,
                best_sequence: best_seq.ids(&inst).map(str::to_owned).collect(),
            },
        );
        best_sequences.push((strategy.name(), best_seq));
    }

    let loads = if config.load_jobs.contains(&job.id) {
        let mut series = BTreeMap::new();
        if let Some((seq, _)) = &human {
            series.insert("human".to_owned(), decode(&inst, seq)?.load_profile().per_round);
        }
        for (name, seq) in &best_sequences {
            series.insert((*name).to_owned(), decode(&inst, seq)?.load_profile().per_round);
        }
        Some(series)
    } else {
        None
    };

    let fit_point = human_makespan.zip(adjusted_time).map(|(h, t)| (h as f64, t));
    Ok(JobOutcome {
        record: JobRecord {
            job_id: job.id.clone(),
            lower_bound: lb,
            worst_case_bound: wc,
            human_makespan,
            human_sequence: human.map(|(seq, _)| seq.ids(&inst).map(str::to_owned).collect()),
            adjusted_time,
            inconsistencies,
            strategies,
        },
        fit_point,
        loads,
    })
}
