//! Belt assignments: the content of the feed-in slot at every step.
//!
//! An assignment is stored as a trimmed prefix; every step past the end is
//! empty. Step indices are 0-based, and the makespan of an assignment is its
//! last occupied step plus the slot count, i.e. the step at which the last
//! item leaves the press.

use super::instance::{Instance, TypeIndex};
use super::sequence::{check_counts, InjectionSequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeltAssignment {
    slots: u32,
    steps: Vec<Option<TypeIndex>>,
}

impl BeltAssignment {
    /// Trailing empty steps are dropped.
    pub fn new(slots: u32, mut steps: Vec<Option<TypeIndex>>) -> Self {
        while let Some(None) = steps.last() {
            steps.pop();
        }
        BeltAssignment { slots, steps }
    }

    /// Builds an assignment from type ids, with `None` for an empty slot.
    pub fn from_ids(inst: &Instance, ids: &[Option<&str>]) -> Result<Self> {
        let steps = ids
            .iter()
            .map(|id| match id {
                None => Ok(None),
                Some(id) => inst
                    .index_of(id)
                    .map(Some)
                    .ok_or_else(|| Error::UnknownType((*id).to_owned())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(inst.slots(), steps))
    }

    pub fn slots(&self) -> u32 {
        self.slots
    }

    pub fn steps(&self) -> &[Option<TypeIndex>] {
        &self.steps
    }

    /// Content of the feed-in slot at `step`; empty past the stored prefix.
    #[inline]
    pub fn at(&self, step: usize) -> Option<TypeIndex> {
        self.steps.get(step).copied().flatten()
    }

    /// Renders the steps as ids, `_` for empty, e.g. `A B _ A B`.
    pub fn render(&self, inst: &Instance) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Some(t) => inst.spec(*t).id.as_str(),
                None => "_",
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn produced(&self, type_count: usize) -> Vec<u64> {
        let mut counts = vec![0u64; type_count];
        for t in self.steps.iter().flatten() {
            if let Some(c) = counts.get_mut(t.get()) {
                *c += 1;
            }
        }
        counts
    }

    /// Last occupied step plus the slot count. Fails unless every demand is met
    /// exactly.
    pub fn makespan(&self, inst: &Instance) -> Result<u64> {
        let produced = self.produced(inst.type_count());
        for t in inst.indices() {
            if produced[t.get()] != u64::from(inst.spec(t).demand) {
                return Err(Error::IncompleteAssignment(inst.spec(t).id.to_string()));
            }
        }
        // demands are positive, so the prefix is non-empty here
        Ok((self.steps.len() - 1) as u64 + u64::from(self.slots))
    }

    /// Steps at which a mould is put onto the belt: the slot holds `A` and did
    /// not hold `A` one rotation earlier.
    pub fn injections(&self) -> Vec<InjectionEvent> {
        let n = self.slots as usize;
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                let t = (*s)?;
                (i < n || self.steps[i - n] != Some(t)).then_some(InjectionEvent { step: i, ty: t })
            })
            .collect()
    }

    /// Number of occupied steps in each round of `slots` consecutive steps.
    pub fn load_profile(&self) -> LoadProfile {
        let n = self.slots as usize;
        LoadProfile {
            per_round: self
                .steps
                .chunks(n)
                .map(|round| round.iter().filter(|s| s.is_some()).count() as u32)
                .collect(),
        }
    }

    /// Evaluates the three assignment conditions and the two normal-form
    /// properties literally, reporting the smallest violating step.
    pub fn check(&self, inst: &Instance) -> AssignmentReport {
        let n = self.slots as usize;
        let len = self.steps.len();
        let k = inst.type_count();
        let mut violations: Vec<usize> = Vec::new();

        // positions of every type, ascending
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, s) in self.steps.iter().enumerate() {
            if let Some(t) = s {
                if t.get() >= k {
                    // foreign type index: nothing else is meaningful
                    return AssignmentReport::all_false(i);
                }
                positions[t.get()].push(i);
            }
        }

        // (i) every demand met exactly
        let mut cond_demand = true;
        for t in inst.indices() {
            let d = inst.spec(t).demand as usize;
            let pos = &positions[t.get()];
            if pos.len() != d {
                cond_demand = false;
                violations.push(if pos.len() > d { pos[d] } else { len });
            }
        }

        // (ii) a mould stays until its type is done
        let mut cond_persistence = true;
        for (i, s) in self.steps.iter().enumerate() {
            let Some(t) = *s else { continue };
            if self.at(i + n) == Some(t) {
                continue;
            }
            let pos = &positions[t.get()];
            let upto = pos.partition_point(|&p| p < i + n);
            if upto != inst.spec(t).demand as usize {
                cond_persistence = false;
                violations.push(i);
                break;
            }
        }

        let injections = self.injections();
        let mut used = vec![0u32; k];
        let mut cond_capacity = true;
        for ev in &injections {
            used[ev.ty.get()] += 1;
            if cond_capacity && used[ev.ty.get()] > inst.spec(ev.ty).capacity {
                cond_capacity = false;
                violations.push(ev.step);
            }
        }

        let first_empty = self.steps.iter().position(Option::is_none);

        // (1) no injection at or after an empty slot
        let mut econom = true;
        if let (Some(e), Some(last)) = (first_empty, injections.last()) {
            if last.step > e {
                econom = false;
                violations.push(e);
            }
        }

        // (2) an under-used type does not appear after an empty slot
        let mut more_moulds = true;
        if let Some(e) = first_empty {
            let late = inst.indices().any(|t| {
                used[t.get()] < inst.spec(t).capacity
                    && positions[t.get()].last().is_some_and(|&p| p > e)
            });
            if late {
                more_moulds = false;
                violations.push(e);
            }
        }

        AssignmentReport {
            cond_demand,
            cond_persistence,
            cond_capacity,
            econom,
            more_moulds,
            first_violation: violations.into_iter().min(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InjectionEvent {
    pub step: usize,
    pub ty: TypeIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssignmentReport {
    pub cond_demand: bool,
    pub cond_persistence: bool,
    pub cond_capacity: bool,
    pub econom: bool,
    pub more_moulds: bool,
    pub first_violation: Option<usize>,
}

impl AssignmentReport {
    fn all_false(step: usize) -> Self {
        AssignmentReport {
            cond_demand: false,
            cond_persistence: false,
            cond_capacity: false,
            econom: false,
            more_moulds: false,
            first_violation: Some(step),
        }
    }

    pub fn all_ok(&self) -> bool {
        self.is_assignment() && self.econom && self.more_moulds
    }

    /// Conditions (i) to (iii) hold.
    pub fn is_assignment(&self) -> bool {
        self.cond_demand && self.cond_persistence && self.cond_capacity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoadProfile {
    pub per_round: Vec<u32>,
}

impl LoadProfile {
    pub fn total(&self) -> u64 {
        self.per_round.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn peak(&self) -> u32 {
        self.per_round.iter().copied().max().unwrap_or(0)
    }
}

/// Turns an injection sequence into the belt assignment it induces.
///
/// At every step the mould returning from one rotation ago stays if its type
/// still has demand; otherwise the next unconsumed sequence entry whose type
/// still has demand takes the slot, and the slot stays empty once the sequence
/// is exhausted. Decoding stops as soon as the total demand is placed.
pub fn decode(inst: &Instance, seq: &InjectionSequence) -> Result<BeltAssignment> {
    check_counts(inst, seq.entries())?;

    let n = inst.slots() as usize;
    let total = inst.total_demand();
    let guard = (n as u64).saturating_mul(total).saturating_add(n as u64);
    let entries = seq.entries();

    let mut steps: Vec<Option<TypeIndex>> = Vec::with_capacity(total as usize + n);
    let mut produced = vec![0u32; inst.type_count()];
    let mut placed = 0u64;
    let mut next = 0usize;

    while placed < total {
        let i = steps.len();
        if i as u64 > guard {
            return Err(Error::DecodeOverrun(i));
        }
        let mut candidate = if i >= n { steps[i - n] } else { None };
        loop {
            if let Some(t) = candidate {
                if produced[t.get()] < inst.spec(t).demand {
                    break;
                }
            }
            match entries.get(next) {
                Some(&t) => {
                    candidate = Some(t);
                    next += 1;
                }
                None => {
                    candidate = None;
                    break;
                }
            }
        }
        if let Some(t) = candidate {
            produced[t.get()] += 1;
            placed += 1;
        }
        steps.push(candidate);
    }
    Ok(BeltAssignment::new(inst.slots(), steps))
}

/// Types of the injections of `b` in step order: the minimal sequence that
/// decodes back to `b`. Requires both normal-form properties.
pub fn short_injection_sequence(inst: &Instance, b: &BeltAssignment) -> Result<InjectionSequence> {
    let report = b.check(inst);
    if !(report.econom && report.more_moulds) {
        return Err(Error::NotNormalForm(report.first_violation.unwrap_or(0)));
    }
    let entries = b.injections().into_iter().map(|ev| ev.ty).collect();
    InjectionSequence::new(inst, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Instance {
        Instance::new(3, [("A", 2, 1), ("B", 2, 1)]).unwrap()
    }

    fn ab_wide() -> Instance {
        Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap()
    }

    fn decode_ids(inst: &Instance, ids: &[&str]) -> BeltAssignment {
        decode(inst, &InjectionSequence::from_ids(inst, ids).unwrap()).unwrap()
    }

    #[test]
    fn decode_leaves_gap_when_sequence_runs_out() {
        let inst = ab();
        let b = decode_ids(&inst, &["A", "B"]);
        assert_eq!(b.render(&inst), "A B _ A B");
        assert_eq!(b.makespan(&inst).unwrap(), 7);
    }

    #[test]
    fn decode_refills_ejected_slots() {
        let inst = ab_wide();
        let b = decode_ids(&inst, &["B", "A", "A"]);
        assert_eq!(b.render(&inst), "B A A B A A B");
        assert_eq!(b.makespan(&inst).unwrap(), 9);
    }

    #[test]
    fn single_mould_single_lap() {
        let inst = Instance::new(20, [("A", 1, 1)]).unwrap();
        let b = decode_ids(&inst, &["A"]);
        assert_eq!(b.render(&inst), "A");
        assert_eq!(b.makespan(&inst).unwrap(), 20);
    }

    #[test]
    fn decode_rejects_invalid_sequences() {
        let inst = ab();
        let missing = InjectionSequence::from_raw(vec![TypeIndex(0)]);
        assert!(matches!(decode(&inst, &missing), Err(Error::MissingType(_))));
        let over = InjectionSequence::from_raw(vec![TypeIndex(0), TypeIndex(1), TypeIndex(0)]);
        assert!(matches!(decode(&inst, &over), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn makespan_of_contiguous_and_incomplete() {
        let inst = Instance::new(3, [("A", 3, 3)]).unwrap();
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), Some("A"), Some("A")]).unwrap();
        assert_eq!(b.makespan(&inst).unwrap(), 5);
        let short = BeltAssignment::from_ids(&inst, &[Some("A"), Some("A")]).unwrap();
        assert!(matches!(short.makespan(&inst), Err(Error::IncompleteAssignment(_))));
    }

    #[test]
    fn trailing_empty_steps_are_trimmed() {
        let inst = ab();
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), None, None]).unwrap();
        assert_eq!(b.steps().len(), 1);
        assert_eq!(b.at(7), None);
    }

    #[test]
    fn injection_events() {
        let inst = ab();
        let b = decode_ids(&inst, &["A", "B"]);
        let ev: Vec<_> = b.injections().iter().map(|e| (e.step, e.ty.0)).collect();
        assert_eq!(ev, vec![(0, 0), (1, 1)]);

        let inst = ab_wide();
        let b = decode_ids(&inst, &["B", "A", "A"]);
        let ev: Vec<_> = b.injections().iter().map(|e| (e.step, e.ty.0)).collect();
        assert_eq!(ev, vec![(0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn load_profiles() {
        let inst = ab();
        assert_eq!(decode_ids(&inst, &["A", "B"]).load_profile().per_round, vec![2, 2]);
        let inst = ab_wide();
        let lp = decode_ids(&inst, &["B", "A", "A"]).load_profile();
        assert_eq!(lp.per_round, vec![3, 3, 1]);
        assert_eq!(lp.total(), 7);
        let inst = Instance::new(3, [("A", 3, 3)]).unwrap();
        assert_eq!(decode_ids(&inst, &["A", "A", "A"]).load_profile().per_round, vec![3]);
    }

    #[test]
    fn check_accepts_gap_after_last_injection() {
        let inst = Instance::new(2, [("A", 2, 1)]).unwrap();
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), None, Some("A")]).unwrap();
        let r = b.check(&inst);
        assert!(r.all_ok(), "{r:?}");
        assert_eq!(r.first_violation, None);
    }

    #[test]
    fn check_flags_injection_after_empty_slot() {
        let inst = Instance::new(2, [("A", 2, 2)]).unwrap();
        let b = BeltAssignment::from_ids(&inst, &[None, Some("A"), Some("A")]).unwrap();
        let r = b.check(&inst);
        assert!(!r.econom);
        assert!(r.cond_demand && r.cond_persistence && r.cond_capacity && r.more_moulds);
        assert_eq!(r.first_violation, Some(0));
    }

    #[test]
    fn check_flags_other_violations() {
        let inst = Instance::new(2, [("A", 2, 1)]).unwrap();
        // mould leaves before its demand is met, then a second mould is injected
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), None, None, Some("A")]).unwrap();
        let r = b.check(&inst);
        assert!(!r.cond_persistence);
        assert!(!r.cond_capacity);
        assert_eq!(r.first_violation, Some(0));

        // too much production
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), None, Some("A"), None, Some("A")])
            .unwrap();
        let r = b.check(&inst);
        assert!(!r.cond_demand);
        assert_eq!(r.first_violation, Some(4));

        // an unused second mould of A while a slot sits empty
        let inst = Instance::new(2, [("A", 3, 2)]).unwrap();
        let b = BeltAssignment::from_ids(&inst, &[Some("A"), None, Some("A"), None, Some("A")])
            .unwrap();
        let r = b.check(&inst);
        assert!(r.is_assignment() && r.econom);
        assert!(!r.more_moulds);
        assert_eq!(r.first_violation, Some(1));
    }

    #[test]
    fn short_sequence_round_trip() {
        let inst = ab();
        let b = decode_ids(&inst, &["A", "B"]);
        let short = short_injection_sequence(&inst, &b).unwrap();
        assert_eq!(short.ids(&inst).collect::<Vec<_>>(), ["A", "B"]);

        // unnecessary moulds are dropped
        let inst = Instance::new(3, [("A", 1, 3), ("B", 2, 1)]).unwrap();
        let full = InjectionSequence::from_ids(&inst, &["A", "A", "B", "A"]).unwrap();
        let b = decode(&inst, &full).unwrap();
        let short = short_injection_sequence(&inst, &b).unwrap();
        assert!(short.len() < full.len());
        assert!(short.is_subsequence_of(&full));
        assert_eq!(decode(&inst, &short).unwrap(), b);
    }

    #[test]
    fn short_sequence_requires_normal_form() {
        let inst = Instance::new(2, [("A", 2, 2)]).unwrap();
        let b = BeltAssignment::from_ids(&inst, &[None, Some("A"), Some("A")]).unwrap();
        assert!(matches!(
            short_injection_sequence(&inst, &b),
            Err(Error::NotNormalForm(0))
        ));
    }
}
