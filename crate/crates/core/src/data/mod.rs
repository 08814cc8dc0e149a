//! Synthetic corpora, press-exit logs and log ingestion.

mod corpus;
mod ingest;
mod log;

pub use corpus::{
    generate_corpus, generate_instance, generate_job, job_id, CorpusDir, CorpusProfile, Job,
    Manifest, DEFAULT_JOB_COUNT, DEFAULT_TOTAL_DEMAND,
};
pub use ingest::{computed_makespan, ingest_log, IngestResult, DEFAULT_IDLE_THRESHOLD_S};
pub use log::{synthesize_log, IdleGap, LogEvent, TimestampLog};
