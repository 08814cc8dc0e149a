use belt_makespan::data::{generate_corpus, CorpusProfile, Job};
use belt_makespan::harness::{benchmark_jobs, write_outputs, BenchConfig, BenchReport};
use belt_makespan::model::Instance;
use belt_makespan::solvers::{Budget, Strategy};

fn small_config() -> BenchConfig {
    BenchConfig {
        budget: Budget::sequences(80),
        repeats: 3,
        seed: 11,
        load_jobs: vec!["job-0002".into()],
        ..BenchConfig::default()
    }
}

fn small_corpus() -> Vec<Job> {
    generate_corpus(&CorpusProfile {
        job_count: 12,
        demand_mean: 150.0,
        seed: 3,
        ..CorpusProfile::default()
    })
    .unwrap()
}

#[test]
fn single_type_jobs_hit_the_lower_bound() {
    // one type leaves nothing to order: every strategy and the bound agree
    let jobs: Vec<Job> = (0..4)
        .map(|i| Job {
            id: format!("solo-{i}"),
            declared: Instance::new(5, [("A", 7 + 3 * i, 1 + i % 3)]).unwrap(),
            log: None,
        })
        .collect();
    let report = benchmark_jobs(&jobs, &small_config()).unwrap();
    for s in Strategy::HEURISTICS {
        let c = &report.cumulated[s.name()];
        assert_eq!(c.ratio_vs_lower_bound, 1.0);
        assert_eq!(c.ratio_vs_human, None);
    }
    assert_eq!(report.human_jobs, 0);
    assert_eq!(report.notes.len(), 1);
}

#[test]
fn report_json_round_trips() {
    let report = benchmark_jobs(&small_corpus(), &small_config()).unwrap();
    let text = report.to_json();
    let back = BenchReport::from_json(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json(), text);
}

#[test]
fn same_seed_gives_identical_reports() {
    let jobs = small_corpus();
    let a = benchmark_jobs(&jobs, &small_config()).unwrap().to_json();
    let b = benchmark_jobs(&jobs, &small_config()).unwrap().to_json();
    assert_eq!(a, b);
    let other = BenchConfig {
        seed: 12,
        ..small_config()
    };
    let c = benchmark_jobs(&jobs, &other).unwrap();
    assert_eq!(c.jobs.len(), 12);
}

#[test]
fn ratios_are_sandwiched_and_outputs_written() {
    let report = benchmark_jobs(&small_corpus(), &small_config()).unwrap();
    for job in &report.jobs {
        for stats in job.strategies.values() {
            assert!(stats.min as f64 <= stats.mean && stats.mean <= stats.max as f64);
            assert!(job.lower_bound <= stats.min && stats.max <= job.worst_case_bound);
        }
    }
    for c in report.cumulated.values() {
        assert!(c.ratio_vs_lower_bound >= 1.0);
    }
    assert!(report.validation_fit.is_some());
    assert!(report.load_series["job-0002"].contains_key("human"));

    let dir = tempfile::tempdir().unwrap();
    write_outputs(dir.path(), &report).unwrap();
    let load = std::fs::read_to_string(dir.path().join("load_job-0002.csv")).unwrap();
    assert!(load.starts_with("round,human,"));
}
