use std::collections::HashMap;

use super::log::TimestampLog;
use crate::error::{Error, Result};
use crate::model::{decode, InjectionSequence, Instance, InstanceFile, TypeEntry, validate_instance};

/// Silent intervals of at least this many seconds count as stoppages.
pub const DEFAULT_IDLE_THRESHOLD_S: f64 = 600.0;

#[derive(Debug, Clone, PartialEq)]
pub struct IngestResult {
    /// Declared instance with demand and capacity taken from the log.
    pub instance: Instance,
    /// Types of the moulds in order of first appearance.
    pub human_sequence: InjectionSequence,
    pub adjusted_time: f64,
    pub idle_periods: Vec<(f64, f64)>,
    pub inconsistencies: Vec<String>,
}

/// Reconciles a job's log with its declared instance.
///
/// Observed production replaces the declared demand, capacities grow to the
/// number of distinct moulds seen, and every change is recorded as a note.
/// Stoppages are maximal silent intervals of at least `idle_threshold`
/// seconds, including the stretches before the first and after the last
/// event; their full length is subtracted from the raw duration.
pub fn ingest_log(log: &TimestampLog, declared: &Instance, idle_threshold: f64) -> Result<IngestResult> {
    if log.events.is_empty() {
        return Err(Error::EmptyLog);
    }
    log.check_order()?;
    let mut notes = Vec::new();

    let mut marks = Vec::with_capacity(log.events.len() + 2);
    marks.push(log.start);
    marks.extend(log.events.iter().map(|e| e.time));
    marks.push(log.end);
    let idle_periods: Vec<(f64, f64)> = marks
        .windows(2)
        .filter(|w| w[1] - w[0] >= idle_threshold)
        .map(|w| (w[0], w[1]))
        .collect();
    let idle: f64 = idle_periods.iter().map(|(a, b)| b - a).sum();
    let adjusted_time = log.raw_duration() - idle;

    // per type: produced items and moulds in order of first appearance
    let mut type_order: Vec<&str> = Vec::new();
    let mut produced: HashMap<&str, u64> = HashMap::new();
    let mut mould_type: HashMap<&str, &str> = HashMap::new();
    let mut first_seen: Vec<&str> = Vec::new();
    let mut last_seen: HashMap<&str, usize> = HashMap::new();
    let mut overtaken_before = 0usize;
    let mut reorders = 0usize;
    for (k, ev) in log.events.iter().enumerate() {
        if !produced.contains_key(ev.ty.as_str()) {
            type_order.push(&ev.ty);
        }
        *produced.entry(&ev.ty).or_default() += 1;
        match mould_type.get(ev.mould_id.as_str()) {
            None => {
                mould_type.insert(&ev.mould_id, &ev.ty);
                first_seen.push(&ev.mould_id);
            }
            Some(&ty) if ty != ev.ty => {
                notes.push(format!(
                    "mould `{}` reported as both `{ty}` and `{}`",
                    ev.mould_id, ev.ty
                ));
            }
            Some(_) => {}
        }
        // on a fixed rotation no mould passes twice between two passes of another
        if let Some(&prev) = last_seen.get(ev.mould_id.as_str()) {
            if overtaken_before > prev {
                reorders += 1;
            }
            overtaken_before = overtaken_before.max(prev);
        }
        last_seen.insert(&ev.mould_id, k);
    }
    if reorders > 0 {
        notes.push(format!("relative mould order changed {reorders} times"));
    }

    let mut moulds_used: HashMap<&str, u32> = HashMap::new();
    for &m in &first_seen {
        *moulds_used.entry(mould_type[m]).or_default() += 1;
    }

    let slots = declared.slots();
    let mut types: Vec<TypeEntry> = Vec::new();
    for spec in declared.types() {
        let id = spec.id.as_str();
        let Some(&count) = produced.get(id) else {
            notes.push(format!("type `{id}` declared but never produced; dropped"));
            continue;
        };
        if count != u64::from(spec.demand) {
            notes.push(format!(
                "type `{id}`: demand {} declared, {count} produced",
                spec.demand
            ));
        }
        let used = moulds_used[id];
        if used > spec.capacity {
            notes.push(format!(
                "type `{id}`: {used} moulds used, capacity {} declared",
                spec.capacity
            ));
        }
        types.push(TypeEntry {
            id: id.to_owned(),
            demand: count as i64,
            capacity: i64::from(spec.capacity.max(used)),
        });
    }
    for &id in &type_order {
        if declared.index_of(id).is_none() {
            notes.push(format!("type `{id}` produced but not declared"));
            types.push(TypeEntry {
                id: id.to_owned(),
                demand: produced[id] as i64,
                capacity: i64::from(moulds_used[id]),
            });
        }
    }

    let (instance, clamps) = validate_instance(&InstanceFile {
        slots: i64::from(slots),
        types,
    })?;
    notes.extend(clamps.iter().map(|w| w.to_string()));

    // moulds beyond a clamped capacity cannot be part of a sequence
    let mut taken = vec![0u32; instance.type_count()];
    let mut entries = Vec::with_capacity(first_seen.len());
    for &m in &first_seen {
        let t = instance
            .index_of(mould_type[m])
            .expect("every produced type is in the reconciled instance");
        if taken[t.get()] < instance.spec(t).capacity {
            taken[t.get()] += 1;
            entries.push(t);
        }
    }
    let human_sequence = InjectionSequence::new(&instance, entries)?;

    Ok(IngestResult {
        instance,
        human_sequence,
        adjusted_time,
        idle_periods,
        inconsistencies: notes,
    })
}

/// Makespan of the workers' mould order under the belt model.
pub fn computed_makespan(result: &IngestResult) -> Result<u64> {
    decode(&result.instance, &result.human_sequence)?.makespan(&result.instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::log::{synthesize_log, IdleGap, LogEvent};
    use crate::model::short_injection_sequence;

    fn ev(time: f64, mould: &str) -> LogEvent {
        LogEvent {
            time,
            mould_id: mould.into(),
            ty: mould.split('#').next().unwrap().into(),
        }
    }

    fn log(start: f64, end: f64, events: Vec<LogEvent>) -> TimestampLog {
        TimestampLog {
            job_id: "j".into(),
            start,
            end,
            events,
        }
    }

    #[test]
    fn nine_hundred_second_gap_is_subtracted() {
        let l = log(0.0, 1400.0, vec![ev(100.0, "A#1"), ev(200.0, "A#1"), ev(1100.0, "A#1"), ev(1300.0, "A#1")]);
        let inst = Instance::new(3, [("A", 4, 1)]).unwrap();
        let r = ingest_log(&l, &inst, DEFAULT_IDLE_THRESHOLD_S).unwrap();
        assert_eq!(r.idle_periods, [(200.0, 1100.0)]);
        assert_eq!(r.adjusted_time, 1400.0 - 900.0);
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
    }

    #[test]
    fn boundary_gaps_count_and_short_gaps_do_not() {
        let l = log(0.0, 2000.0, vec![ev(700.0, "A#1"), ev(1299.0, "A#1")]);
        let inst = Instance::new(3, [("A", 2, 1)]).unwrap();
        let r = ingest_log(&l, &inst, 600.0).unwrap();
        assert_eq!(r.idle_periods, [(0.0, 700.0), (1299.0, 2000.0)]);
        assert_eq!(r.adjusted_time, 599.0);
    }

    #[test]
    fn extra_moulds_raise_capacity() {
        let l = log(
            0.0,
            100.0,
            vec![ev(10.0, "A#1"), ev(11.0, "A#2"), ev(12.0, "A#3"), ev(13.0, "B#1")],
        );
        let inst = Instance::new(20, [("A", 3, 2), ("B", 1, 1)]).unwrap();
        let r = ingest_log(&l, &inst, 600.0).unwrap();
        assert_eq!(r.instance.types()[0].capacity, 3);
        assert_eq!(r.inconsistencies.len(), 1, "{:?}", r.inconsistencies);
        assert_eq!(r.human_sequence.ids(&r.instance).collect::<Vec<_>>(), ["A", "A", "A", "B"]);
    }

    #[test]
    fn demand_follows_production() {
        let l = log(0.0, 100.0, vec![ev(10.0, "A#1"), ev(20.0, "C#1")]);
        let inst = Instance::new(20, [("A", 3, 1), ("B", 1, 1)]).unwrap();
        let r = ingest_log(&l, &inst, 600.0).unwrap();
        let ids: Vec<_> = r.instance.types().iter().map(|t| (t.id.as_str(), t.demand)).collect();
        assert_eq!(ids, [("A", 1), ("C", 1)]);
        assert_eq!(r.inconsistencies.len(), 3, "{:?}", r.inconsistencies);
    }

    #[test]
    fn reordering_is_noted() {
        // A#1 overtakes B#1: A passes twice between two passes of B
        let l = log(
            0.0,
            100.0,
            vec![ev(1.0, "A#1"), ev(2.0, "B#1"), ev(3.0, "A#1"), ev(4.0, "A#1"), ev(5.0, "B#1")],
        );
        let inst = Instance::new(2, [("A", 3, 1), ("B", 2, 1)]).unwrap();
        let r = ingest_log(&l, &inst, 600.0).unwrap();
        assert!(r.inconsistencies.iter().any(|n| n.contains("order changed")), "{:?}", r.inconsistencies);
    }

    #[test]
    fn empty_log_rejected() {
        let inst = Instance::new(2, [("A", 1, 1)]).unwrap();
        assert!(matches!(ingest_log(&log(0.0, 1.0, vec![]), &inst, 600.0), Err(Error::EmptyLog)));
    }

    #[test]
    fn synthesized_log_round_trips() {
        let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap();
        let seq = InjectionSequence::from_ids(&inst, &["A", "A", "B"]).unwrap();
        let b = decode(&inst, &seq).unwrap();
        let l = synthesize_log("j", &inst, &b, 0.0, 20.0, &[]);
        let r = ingest_log(&l, &inst, 600.0).unwrap();
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
        assert_eq!(r.human_sequence, short_injection_sequence(&inst, &b).unwrap());
        assert_eq!(r.adjusted_time, l.raw_duration());
        assert_eq!(computed_makespan(&r).unwrap(), b.makespan(&inst).unwrap());
        assert_eq!(r.instance, inst);

        let gapped = synthesize_log("j", &inst, &b, 0.0, 20.0, &[IdleGap { after_step: 2, seconds: 900.0 }]);
        let r = ingest_log(&gapped, &inst, 600.0).unwrap();
        assert_eq!(r.idle_periods.len(), 1);
        assert_eq!(r.adjusted_time, gapped.raw_duration() - 900.0);
    }

    #[test]
    fn computed_makespan_of_reference_logs() {
        let inst = Instance::new(3, [("A", 2, 1), ("B", 2, 1)]).unwrap();
        let b = decode(&inst, &InjectionSequence::from_ids(&inst, &["A", "B"]).unwrap()).unwrap();
        let r = ingest_log(&synthesize_log("j", &inst, &b, 0.0, 20.0, &[]), &inst, 600.0).unwrap();
        assert_eq!(computed_makespan(&r).unwrap(), 7);

        let inst = Instance::new(20, [("A", 1, 1)]).unwrap();
        let l = log(0.0, 600.0, vec![ev(600.0, "A#1")]);
        let r = ingest_log(&l, &inst, 601.0).unwrap();
        assert_eq!(computed_makespan(&r).unwrap(), 20);
    }
}
