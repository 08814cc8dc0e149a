use std::fs;
use std::path::Path;

use super::bench::BenchReport;
use super::stats::histogram;
use crate::error::{Error, Result};

pub const HISTOGRAM_BIN_WIDTH: u64 = 5;

fn write(path: &Path, text: String) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn csv_text(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// One row per job: id, lower bound, human makespan, then mean and min per
/// strategy in configuration order.
pub fn report_csv(report: &BenchReport) -> String {
    let names: Vec<&str> = report.config.strategies.iter().map(|s| s.name()).collect();
    let mut header = vec!["job_id".to_owned(), "lower_bound".to_owned(), "human".to_owned()];
    for n in &names {
        header.push(format!("{n}_mean"));
        header.push(format!("{n}_min"));
    }
    let rows = report.jobs.iter().map(|job| {
        let mut row = vec![
            job.job_id.clone(),
            job.lower_bound.to_string(),
            job.human_makespan.map(|h| h.to_string()).unwrap_or_default(),
        ];
        for n in &names {
            let s = &job.strategies[*n];
            row.push(s.mean.to_string());
            row.push(s.min.to_string());
        }
        row
    });
    csv_text(std::iter::once(header).chain(rows))
}

pub fn histogram_csv(values: &[i64], bin_width: u64) -> String {
    let rows = histogram(values, bin_width)
        .into_iter()
        .map(|(start, freq)| vec![start.to_string(), freq.to_string()]);
    csv_text(std::iter::once(vec!["bin_start".to_owned(), "frequency".to_owned()]).chain(rows))
}

/// Per-job saved steps (`human - mean`, rounded) for one strategy.
pub fn saved_steps(report: &BenchReport, strategy: &str) -> Vec<i64> {
    report
        .jobs
        .iter()
        .filter_map(|j| j.strategies.get(strategy)?.saved_steps)
        .map(|v| v.round() as i64)
        .collect()
}

/// Per-job gap to the lower bound (`mean - lower_bound`, rounded).
pub fn gaps(report: &BenchReport, strategy: &str) -> Vec<i64> {
    report
        .jobs
        .iter()
        .filter_map(|j| j.strategies.get(strategy))
        .map(|s| s.gap.round() as i64)
        .collect()
}

pub fn human_gaps(report: &BenchReport) -> Vec<i64> {
    report
        .jobs
        .iter()
        .filter_map(|j| Some(j.human_makespan? as i64 - j.lower_bound as i64))
        .collect()
}

/// Writes `report.json`, `report.csv`, saved-step and gap histograms, the
/// validation points with the fitted line, and load series for listed jobs.
pub fn write_outputs(dir: &Path, report: &BenchReport) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write(&dir.join("report.json"), report.to_json())?;
    write(&dir.join("report.csv"), report_csv(report))?;

    for s in &report.config.strategies {
        let name = s.name();
        if report.human_jobs > 0 {
            write(
                &dir.join(format!("saved_steps_{name}.csv")),
                histogram_csv(&saved_steps(report, name), HISTOGRAM_BIN_WIDTH),
            )?;
        }
        write(
            &dir.join(format!("gaps_{name}.csv")),
            histogram_csv(&gaps(report, name), HISTOGRAM_BIN_WIDTH),
        )?;
    }
    if report.human_jobs > 0 {
        write(
            &dir.join("gaps_human.csv"),
            histogram_csv(&human_gaps(report), HISTOGRAM_BIN_WIDTH),
        )?;
    }

    if let Some(fit) = &report.validation_fit {
        let header = vec!["computed_makespan".to_owned(), "adjusted_time".to_owned(), "fitted".to_owned()];
        let rows = fit
            .points
            .iter()
            .map(|&(x, y)| vec![x.to_string(), y.to_string(), fit.predict(x).to_string()]);
        write(&dir.join("validation.csv"), csv_text(std::iter::once(header).chain(rows)))?;
    }

    for (job, series) in &report.load_series {
        let rounds = series.values().map(Vec::len).max().unwrap_or(0);
        let mut header = vec!["round".to_owned()];
        header.extend(series.keys().cloned());
        let rows = (0..rounds).map(|r| {
            let mut row = vec![(r + 1).to_string()];
            row.extend(series.values().map(|v| v.get(r).copied().unwrap_or(0).to_string()));
            row
        });
        write(&dir.join(format!("load_{job}.csv")), csv_text(std::iter::once(header).chain(rows)))?;
    }
    Ok(())
}
