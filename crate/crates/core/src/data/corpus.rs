use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use super::log::{synthesize_log, IdleGap, TimestampLog};
use crate::error::{Error, Result};
use crate::model::{decode, Instance, InstanceFile, TypeEntry, validate_instance};
use crate::solvers::{rng_from_seed, substream_seed, uniform_sequence};

/// Statistics of a synthetic job corpus.
///
/// The defaults describe roughly six months of production on a 20-slot line:
/// 349 jobs, about 250,000 items in total, up to eight moulds per type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusProfile {
    pub job_count: usize,
    pub type_count_range: (u32, u32),
    /// Mean total demand of a job; split evenly (in expectation) over its types.
    pub demand_mean: f64,
    /// Log-space standard deviation of per-type demand.
    pub demand_dispersion: f64,
    pub capacity_range: (u32, u32),
    pub slots: u32,
    pub seed: u64,
    pub with_logs: bool,
    pub step_seconds: f64,
    /// Stoppages per job, drawn uniformly from this range.
    pub idle_gaps_per_job: (u32, u32),
    pub idle_gap_seconds: (f64, f64),
    /// Probability that a job declares one mould fewer for one of its types
    /// than the workers actually used.
    pub understated_capacity_rate: f64,
}

pub const DEFAULT_TOTAL_DEMAND: f64 = 250_000.0;
pub const DEFAULT_JOB_COUNT: usize = 349;

impl Default for CorpusProfile {
    fn default() -> Self {
        CorpusProfile {
            job_count: DEFAULT_JOB_COUNT,
            type_count_range: (2, 8),
            demand_mean: DEFAULT_TOTAL_DEMAND / DEFAULT_JOB_COUNT as f64,
            demand_dispersion: 0.5,
            capacity_range: (1, 8),
            slots: 20,
            seed: 2019,
            with_logs: true,
            step_seconds: 20.0,
            idle_gaps_per_job: (0, 2),
            idle_gap_seconds: (900.0, 86_400.0),
            understated_capacity_rate: 0.05,
        }
    }
}

impl CorpusProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Corpus(msg));
        let (tmin, tmax) = self.type_count_range;
        if tmin < 1 || tmin > tmax {
            return bad(format!("bad type count range {tmin}..={tmax}"));
        }
        let (cmin, cmax) = self.capacity_range;
        if cmin < 1 || cmin > cmax || cmax > self.slots {
            return bad(format!(
                "capacity range {cmin}..={cmax} must lie within 1..={}",
                self.slots
            ));
        }
        if !at_least(self.demand_mean, 1.0) || !positive(self.demand_dispersion) {
            return bad("demand mean must be >= 1 and dispersion positive".into());
        }
        if self.with_logs && !positive(self.step_seconds) {
            return bad("step duration must be positive".into());
        }
        let (gmin, gmax) = self.idle_gap_seconds;
        if self.idle_gaps_per_job.0 > self.idle_gaps_per_job.1 || !positive(gmin) || gmin > gmax {
            return bad("bad idle gap ranges".into());
        }
        if !(0.0..=1.0).contains(&self.understated_capacity_rate) {
            return bad("understated capacity rate must be a probability".into());
        }
        Ok(())
    }

    /// Expected number of moulds per job under this profile.
    pub fn expected_moulds(&self) -> f64 {
        let (tmin, tmax) = self.type_count_range;
        let (cmin, cmax) = self.capacity_range;
        f64::from(tmin + tmax) / 2.0 * f64::from(cmin + cmax) / 2.0
    }
}

// both are false for NaN
fn at_least(x: f64, min: f64) -> bool {
    x.partial_cmp(&min).is_some_and(|o| o.is_ge())
}

fn positive(x: f64) -> bool {
    at_least(x, 0.0) && x != 0.0
}

/// Draws one job: type count and capacities uniform in their ranges, demands
/// from a log-normal with the profile's mean (rounded, at least 1).
pub fn generate_instance<R: Rng + ?Sized>(profile: &CorpusProfile, rng: &mut R) -> Instance {
    let (tmin, tmax) = profile.type_count_range;
    let types = rng.random_range(tmin..=tmax);
    let mean = profile.demand_mean / f64::from(types);
    let sigma = profile.demand_dispersion;
    let demand = LogNormal::new(mean.ln() - sigma * sigma / 2.0, sigma).expect("valid log-normal");
    let (cmin, cmax) = profile.capacity_range;
    let entries = (0..types)
        .map(|k| TypeEntry {
            id: format!("T{}", k + 1),
            demand: (demand.sample(rng).round() as i64).max(1),
            capacity: i64::from(rng.random_range(cmin..=cmax)),
        })
        .collect();
    validate_instance(&InstanceFile {
        slots: i64::from(profile.slots),
        types: entries,
    })
    .expect("profile ranges produce valid instances")
    .0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: String,
    /// The instance as recorded in the job data, possibly understating capacities.
    pub declared: Instance,
    pub log: Option<TimestampLog>,
}

pub fn job_id(index: usize) -> String {
    format!("job-{:04}", index + 1)
}

/// Generates job `index` of the corpus from its own substream.
///
/// The simulated workers pick a uniformly random full sequence; the log is
/// what that schedule would record, with random stoppages.
pub fn generate_job(profile: &CorpusProfile, index: usize) -> Job {
    let mut rng = rng_from_seed(substream_seed(profile.seed, index as u64));
    let actual = generate_instance(profile, &mut rng);
    let id = job_id(index);

    let mut declared = actual.to_file();
    if rng.random_bool(profile.understated_capacity_rate) {
        let k = rng.random_range(0..declared.types.len());
        declared.types[k].capacity = (declared.types[k].capacity - 1).max(1);
    }
    let declared = validate_instance(&declared).expect("still valid").0;

    let log = profile.with_logs.then(|| {
        let seq = uniform_sequence(&actual, &mut rng);
        let b = decode(&actual, &seq).expect("generated sequences are valid");
        let last_step = b.steps().len() - 1;
        let (gmin, gmax) = profile.idle_gaps_per_job;
        let (smin, smax) = profile.idle_gap_seconds;
        let mut gaps: Vec<IdleGap> = (0..rng.random_range(gmin..=gmax))
            .map(|_| IdleGap {
                after_step: rng.random_range(0..last_step.max(1)),
                seconds: rng.random_range(smin..=smax).round(),
            })
            .collect();
        gaps.sort_by_key(|g| g.after_step);
        synthesize_log(&id, &actual, &b, 0.0, profile.step_seconds, &gaps)
    });
    Job { id, declared, log }
}

pub fn generate_corpus(profile: &CorpusProfile) -> Result<Vec<Job>> {
    profile.validate()?;
    Ok((0..profile.job_count).map(|i| generate_job(profile, i)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub profile: Option<CorpusProfile>,
    pub jobs: Vec<String>,
}

/// Corpus on disk: `<id>.json` per job, `<id>.log.csv` when a log exists, and
/// `manifest.json` with the job ids and the generating profile.
pub struct CorpusDir {
    root: PathBuf,
}

impl CorpusDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CorpusDir { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn instance_path(&self, id: &str) -> PathBuf {
        self.root.join(format!("{id}.json"))
    }

    pub fn log_path(&self, id: &str) -> PathBuf {
        self.root.join(format!("{id}.log.csv"))
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.root.join("manifest.json")
    }

    pub fn write(&self, profile: Option<&CorpusProfile>, jobs: &[Job]) -> Result<()> {
        fs::create_dir_all(&self.root).map_err(|e| Error::io(&self.root, e))?;
        for job in jobs {
            job.declared.to_file().save(self.instance_path(&job.id))?;
            if let Some(log) = &job.log {
                log.save(self.log_path(&job.id))?;
            }
        }
        let manifest = Manifest {
            profile: profile.cloned(),
            jobs: jobs.iter().map(|j| j.id.clone()).collect(),
        };
        let path = self.manifest_path();
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
        fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
    }

    pub fn manifest(&self) -> Result<Manifest> {
        let path = self.manifest_path();
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::json(&path, e))
    }

    pub fn read_job(&self, id: &str) -> Result<Job> {
        let (declared, _) = Instance::load(self.instance_path(id))?;
        let log_path = self.log_path(id);
        let log = if log_path.exists() {
            Some(TimestampLog::load(&log_path)?)
        } else {
            None
        };
        Ok(Job {
            id: id.to_owned(),
            declared,
            log,
        })
    }

    pub fn read(&self) -> Result<Vec<Job>> {
        let manifest = self.manifest()?;
        if manifest.jobs.is_empty() {
            return Err(Error::Corpus(format!("{} lists no jobs", self.manifest_path().display())));
        }
        manifest.jobs.iter().map(|id| self.read_job(id)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_ranges_give_single_mould_jobs() {
        let profile = CorpusProfile {
            type_count_range: (1, 1),
            capacity_range: (1, 1),
            ..Default::default()
        };
        let mut rng = rng_from_seed(0);
        for _ in 0..20 {
            let inst = generate_instance(&profile, &mut rng);
            assert_eq!(inst.type_count(), 1);
            assert_eq!(inst.types()[0].capacity, 1);
            assert!(inst.types()[0].demand >= 1);
        }
    }

    #[test]
    fn same_seed_same_job() {
        let profile = CorpusProfile::default();
        assert_eq!(generate_job(&profile, 17), generate_job(&profile, 17));
        assert_ne!(generate_job(&profile, 17).declared, generate_job(&profile, 18).declared);
    }

    #[test]
    fn sampler_hits_targets_on_average() {
        let profile = CorpusProfile::default();
        let mut rng = rng_from_seed(99);
        let n = 10_000;
        let (mut demand, mut moulds) = (0.0, 0.0);
        for _ in 0..n {
            let inst = generate_instance(&profile, &mut rng);
            demand += inst.total_demand() as f64;
            moulds += inst.total_moulds() as f64;
        }
        let (demand, moulds) = (demand / n as f64, moulds / n as f64);
        assert!((demand / profile.demand_mean - 1.0).abs() < 0.10, "{demand}");
        assert!((moulds / profile.expected_moulds() - 1.0).abs() < 0.10, "{moulds}");
    }

    #[test]
    fn profile_validation() {
        assert!(CorpusProfile::default().validate().is_ok());
        let bad = CorpusProfile {
            capacity_range: (1, 30),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = CorpusProfile {
            type_count_range: (3, 2),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn corpus_directory_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let profile = CorpusProfile {
            job_count: 5,
            ..Default::default()
        };
        let jobs = generate_corpus(&profile).unwrap();
        let corpus = CorpusDir::new(dir.path());
        corpus.write(Some(&profile), &jobs).unwrap();
        assert_eq!(corpus.manifest().unwrap().profile, Some(profile));
        assert_eq!(corpus.read().unwrap(), jobs);
    }
}
