//! Command-line surface: `solve`, `bench`, `gen`, `ingest` and `reduce`.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 on I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::data::{generate_corpus, ingest_log, computed_makespan, CorpusDir, CorpusProfile, TimestampLog};
use crate::error::{Error, Result};
use crate::hardness::{reduce_partition, PartitionInstance};
use crate::harness::{run_benchmark, write_outputs, BenchConfig, DEFAULT_BRUTE_CAP, DEFAULT_SEQUENCE_BUDGET};
use crate::model::{lower_bound, worst_case_bound, Instance};
use crate::solvers::{substream_seed, Budget, SearchParams, Strategy};

#[derive(Debug, Parser)]
#[command(name = "belt-makespan", version, about = "Conveyor-belt makespan scheduling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance with one strategy.
    Solve(SolveArgs),
    /// Run strategies over a corpus directory.
    Bench(BenchArgs),
    /// Generate a synthetic corpus.
    Gen(GenArgs),
    /// Reconcile a timestamp log with its instance.
    Ingest(IngestArgs),
    /// Reduce a Partition instance to a belt instance.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Evaluated sequences per run.
    #[arg(long, conflicts_with = "budget_ms")]
    pub budget_iters: Option<u64>,
    /// Wall-clock milliseconds per run.
    #[arg(long)]
    pub budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        match (self.budget_iters, self.budget_ms) {
            (None, None) => Ok(Budget::sequences(DEFAULT_SEQUENCE_BUDGET)),
            (iters, ms) => Budget::new(iters, ms),
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 10)]
    pub steps: u32,
    #[arg(long, default_value_t = 10)]
    pub swaps: u32,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub algo: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub repeats: u32,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Largest permutation count `brute` will enumerate.
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Comma-separated strategy names.
    #[arg(long, default_value = "sr,sr-loc,nr,nr-loc", value_delimiter = ',')]
    pub algos: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub repeats: u32,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 600.0)]
    pub idle_threshold: f64,
    /// Jobs whose per-round load series are written out.
    #[arg(long, value_delimiter = ',')]
    pub load_jobs: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON profile; missing fields take their defaults.
    #[arg(long, conflicts_with = "defaults", required_unless_present = "defaults")]
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub defaults: bool,
    /// Overrides the profile seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 600.0)]
    pub idle_threshold: f64,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Comma-separated positive integers.
    #[arg(long, value_delimiter = ',')]
    pub ints: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    pub slots: u32,
    /// Also write the instance file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct RunSummary {
    seed: Option<u64>,
    best_makespan: u64,
    best_sequence: Vec<String>,
    sequences_evaluated: u64,
    elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    algo: String,
    lower_bound: u64,
    worst_case_bound: u64,
    best_makespan: u64,
    best_sequence: Vec<String>,
    warnings: Vec<String>,
    runs: Vec<RunSummary>,
}

#[derive(Debug, Serialize)]
struct IngestReport {
    instance: crate::model::InstanceFile,
    human_sequence: Vec<String>,
    computed_makespan: u64,
    raw_time: f64,
    adjusted_time: f64,
    idle_periods: Vec<(f64, f64)>,
    inconsistencies: Vec<String>,
}

#[derive(Debug, Serialize)]
struct ReduceReport {
    trivially_no: bool,
    threshold: Option<u64>,
    instance: Option<crate::model::InstanceFile>,
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serialises");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn solve(args: &SolveArgs, stdout: &mut dyn Write) -> Result<()> {
    let (inst, warnings) = Instance::load(&args.instance)?;
    let strategy: Strategy = args.algo.parse()?;
    let budget = args.budget.budget()?;
    let params = SearchParams::new(args.search.steps, args.search.swaps)?;
    if args.repeats < 1 {
        return Err(Error::InvalidParams("repeats must be at least 1".into()));
    }
    let mut runs = Vec::new();
    for r in 0..args.repeats {
        let seed = substream_seed(args.seed, u64::from(r));
        let res = strategy.solve(&inst, &params, &budget, seed, args.cap)?;
        runs.push(RunSummary {
            seed: res.seed,
            best_makespan: res.best_makespan,
            best_sequence: res.best_sequence.ids(&inst).map(str::to_owned).collect(),
            sequences_evaluated: res.sequences_evaluated,
            elapsed_ms: res.elapsed_ms,
        });
    }
    let best = runs
        .iter()
        .min_by_key(|r| r.best_makespan)
        .expect("at least one run");
    let report = SolveReport {
        algo: strategy.name().to_owned(),
        lower_bound: lower_bound(&inst),
        worst_case_bound: worst_case_bound(&inst),
        best_makespan: best.best_makespan,
        best_sequence: best.best_sequence.clone(),
        warnings: warnings.iter().map(ToString::to_string).collect(),
        runs,
    };
    emit(&report, args.out.as_deref(), stdout)
}

fn bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<()> {
    let strategies = args
        .algos
        .iter()
        .map(|a| a.parse())
        .collect::<Result<Vec<Strategy>>>()?;
    let config = BenchConfig {
        strategies,
        budget: args.budget.budget()?,
        repeats: args.repeats,
        seed: args.seed,
        params: SearchParams::new(args.search.steps, args.search.swaps)?,
        idle_threshold: args.idle_threshold,
        load_jobs: args.load_jobs.clone(),
        ..Default::default()
    };
    let report = run_benchmark(&CorpusDir::new(&args.corpus), &config)?;
    write_outputs(&args.out, &report)?;
    let mut summary = String::new();
    for (name, c) in &report.cumulated {
        summary.push_str(&format!(
            "{name:>7}: {:.4} of lower bound{}\n",
            c.ratio_vs_lower_bound,
            c.ratio_vs_human
                .map(|h| format!(", {h:.4} of human"))
                .unwrap_or_default()
        ));
    }
    if let Some(h) = report.human_ratio_vs_lower_bound {
        summary.push_str(&format!("  human: {h:.4} of lower bound\n"));
    }
    stdout
        .write_all(summary.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut profile = match &args.profile {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            serde_json::from_str(&text).map_err(|e| Error::json(path, e))?
        }
        None => CorpusProfile::default(),
    };
    if let Some(seed) = args.seed {
        profile.seed = seed;
    }
    let jobs = generate_corpus(&profile)?;
    CorpusDir::new(&args.out).write(Some(&profile), &jobs)?;
    let demand: u64 = jobs.iter().map(|j| j.declared.total_demand()).sum();
    writeln!(stdout, "{} jobs, total demand {demand}", jobs.len()).map_err(|e| Error::io("<stdout>", e))
}

fn ingest(args: &IngestArgs, stdout: &mut dyn Write) -> Result<()> {
    let log = TimestampLog::load(&args.log)?;
    let (declared, _) = Instance::load(&args.instance)?;
    let result = ingest_log(&log, &declared, args.idle_threshold)?;
    let report = IngestReport {
        instance: result.instance.to_file(),
        human_sequence: result.human_sequence.ids(&result.instance).map(str::to_owned).collect(),
        computed_makespan: computed_makespan(&result)?,
        raw_time: log.raw_duration(),
        adjusted_time: result.adjusted_time,
        idle_periods: result.idle_periods,
        inconsistencies: result.inconsistencies,
    };
    emit(&report, None, stdout)
}

fn reduce(args: &ReduceArgs, stdout: &mut dyn Write) -> Result<()> {
    let out = reduce_partition(&PartitionInstance::new(args.ints.clone())?, args.slots)?;
    let file = out.instance.as_ref().map(Instance::to_file);
    if let (Some(path), Some(file)) = (&args.out, &file) {
        file.save(path)?;
    }
    let report = ReduceReport {
        trivially_no: out.trivially_no,
        threshold: out.threshold,
        instance: file,
    };
    emit(&report, None, stdout)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => solve(a, stdout),
        Command::Bench(a) => bench(a, stdout),
        Command::Gen(a) => gen(a, stdout),
        Command::Ingest(a) => ingest(a, stdout),
        Command::Reduce(a) => reduce(a, stdout),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_io() {
        2
    } else {
        1
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
