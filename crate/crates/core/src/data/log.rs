use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BeltAssignment, Instance};

/// One press exit: the mould `mould_id` of type `ty` left the press at `time`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEvent {
    #[serde(rename = "time_s")]
    pub time: f64,
    pub mould_id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

/// Press-exit timestamps of one job, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct TimestampLog {
    pub job_id: String,
    pub start: f64,
    pub end: f64,
    pub events: Vec<LogEvent>,
}

impl TimestampLog {
    pub fn raw_duration(&self) -> f64 {
        self.end - self.start
    }

    /// Events sorted by time and bracketed by `start` and `end`.
    pub fn check_order(&self) -> Result<()> {
        if self.events.windows(2).any(|w| w[1].time < w[0].time) {
            return Err(Error::MalformedLog("events are not sorted by time".into()));
        }
        if let (Some(first), Some(last)) = (self.events.first(), self.events.last()) {
            if first.time < self.start || last.time > self.end {
                return Err(Error::MalformedLog(
                    "events fall outside the start/end window".into(),
                ));
            }
        }
        Ok(())
    }

    /// CSV with `# job_id=`, `# start_s=` and `# end_s=` comment lines
    /// followed by a `time_s,mould_id,type` table.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# job_id={}", self.job_id);
        let _ = writeln!(out, "# start_s={}", self.start);
        let _ = writeln!(out, "# end_s={}", self.end);
        let mut w = csv::Writer::from_writer(Vec::new());
        for ev in &self.events {
            w.serialize(ev).expect("in-memory csv write");
        }
        if self.events.is_empty() {
            w.write_record(["time_s", "mould_id", "type"]).expect("in-memory csv write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut meta: HashMap<&str, &str> = HashMap::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim();
            let Some(comment) = trimmed.strip_prefix('#') else { break };
            if let Some((k, v)) = comment.trim().split_once('=') {
                meta.insert(k.trim(), v.trim());
            }
            body_start += line.len();
        }
        let number = |key: &str| -> Result<f64> {
            let raw = meta
                .get(key)
                .ok_or_else(|| Error::MalformedLog(format!("missing `# {key}=` line")))?;
            raw.parse()
                .map_err(|_| Error::MalformedLog(format!("`{key}` is not a number: {raw}")))
        };
        let job_id = meta
            .get("job_id")
            .ok_or_else(|| Error::MalformedLog("missing `# job_id=` line".into()))?
            .to_string();
        let start = number("start_s")?;
        let end = number("end_s")?;
        let mut reader = csv::Reader::from_reader(&text.as_bytes()[body_start..]);
        let events = reader
            .deserialize()
            .collect::<std::result::Result<Vec<LogEvent>, _>>()
            .map_err(|e| Error::MalformedLog(e.to_string()))?;
        let log = TimestampLog {
            job_id,
            start,
            end,
            events,
        };
        log.check_order()?;
        Ok(log)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }
}

/// A stoppage in a synthesized log: the silent interval following the press
/// exits of feed-in steps up to `after_step` lasts `seconds` in total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdleGap {
    pub after_step: usize,
    pub seconds: f64,
}

/// Renders the press-exit log an assignment would produce.
///
/// Without gaps, the item fed in at step `i` leaves the press at
/// `start + (i + slots) * step_seconds`. A gap replaces the natural spacing
/// between the two events it separates (or between `start` and the first
/// event, or the last event and `end`). Mould ids are `type#k`, numbered by
/// injection order within each type. `end` is the last press exit unless a gap
/// follows it.
pub fn synthesize_log(
    job_id: &str,
    inst: &Instance,
    b: &BeltAssignment,
    start: f64,
    step_seconds: f64,
    gaps: &[IdleGap],
) -> TimestampLog {
    let n = inst.slots() as usize;
    let mut mould_at: Vec<Option<usize>> = vec![None; b.steps().len()];
    let mut moulds: Vec<String> = Vec::new();
    let mut ordinal = vec![0usize; inst.type_count()];

    let mut events = Vec::new();
    let mut time = start;
    let mut natural_prev = start;
    // steps are grouped by which events they fall between; a gap applies to
    // the first boundary at or after its step
    let mut prev_step: Option<usize> = None;
    for (i, s) in b.steps().iter().enumerate() {
        let Some(t) = *s else { continue };
        let mould = match i.checked_sub(n).and_then(|j| (b.at(j) == Some(t)).then_some(j)) {
            Some(j) => mould_at[j].expect("occupied step has a mould"),
            None => {
                ordinal[t.get()] += 1;
                moulds.push(format!("{}#{}", inst.spec(t).id, ordinal[t.get()]));
                moulds.len() - 1
            }
        };
        mould_at[i] = Some(mould);

        let natural = start + (i + n) as f64 * step_seconds;
        let pause: f64 = gaps
            .iter()
            .filter(|g| prev_step.is_none_or(|p| g.after_step >= p) && g.after_step < i)
            .map(|g| g.seconds)
            .sum();
        let spacing = if pause > 0.0 { pause } else { natural - natural_prev };
        time += spacing;
        natural_prev = natural;
        prev_step = Some(i);
        events.push(LogEvent {
            time,
            mould_id: moulds[mould].clone(),
            ty: inst.spec(t).id.to_string(),
        });
    }
    let tail: f64 = gaps
        .iter()
        .filter(|g| prev_step.is_none_or(|p| g.after_step >= p))
        .map(|g| g.seconds)
        .sum();
    TimestampLog {
        job_id: job_id.to_owned(),
        start,
        end: time + tail,
        events,
    }
}
