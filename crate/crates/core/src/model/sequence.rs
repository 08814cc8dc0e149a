use std::path::Path;

use serde::{Deserialize, Serialize};

use super::instance::{Instance, TypeIndex};
use crate::error::{Error, Result};

/// Ordered list of mould injections for one instance.
///
/// Every type appears at least once and at most `capacity` times. A sequence
/// is *full* when every type appears exactly `capacity` times; those are the
/// sequences the randomized solvers draw from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InjectionSequence {
    entries: Vec<TypeIndex>,
}

impl InjectionSequence {
    /// Validates the per-type counts against `inst`.
    pub fn new(inst: &Instance, entries: Vec<TypeIndex>) -> Result<Self> {
        check_counts(inst, &entries)?;
        Ok(InjectionSequence { entries })
    }

    pub fn from_ids<S: AsRef<str>>(inst: &Instance, ids: &[S]) -> Result<Self> {
        let entries = ids
            .iter()
            .map(|id| {
                inst.index_of(id.as_ref())
                    .ok_or_else(|| Error::UnknownType(id.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(inst, entries)
    }

    /// Entries must already satisfy the count invariants.
    pub(crate) fn from_raw(entries: Vec<TypeIndex>) -> Self {
        InjectionSequence { entries }
    }

    /// The canonical full sequence: every type repeated `capacity` times, in
    /// instance order.
    pub fn all_moulds(inst: &Instance) -> Self {
        let mut entries = Vec::with_capacity(inst.total_moulds());
        for t in inst.indices() {
            entries.extend(std::iter::repeat_n(t, inst.spec(t).capacity as usize));
        }
        InjectionSequence { entries }
    }

    #[inline]
    pub fn entries(&self) -> &[TypeIndex] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [TypeIndex] {
        &mut self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_full(&self, inst: &Instance) -> bool {
        let mut counts = vec![0u32; inst.type_count()];
        for t in &self.entries {
            counts[t.get()] += 1;
        }
        inst.indices().all(|t| counts[t.get()] == inst.spec(t).capacity)
    }

    pub fn ids<'a>(&'a self, inst: &'a Instance) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.iter().map(move |&t| inst.spec(t).id.as_str())
    }

    pub fn to_file(&self, inst: &Instance) -> SequenceFile {
        SequenceFile {
            entries: self.ids(inst).map(str::to_owned).collect(),
        }
    }

    /// True if `self` can be obtained from `other` by deleting entries.
    pub fn is_subsequence_of(&self, other: &InjectionSequence) -> bool {
        let mut it = other.entries.iter();
        self.entries.iter().all(|e| it.any(|o| o == e))
    }
}

pub(crate) fn check_counts(inst: &Instance, entries: &[TypeIndex]) -> Result<()> {
    let mut counts = vec![0usize; inst.type_count()];
    for t in entries {
        match counts.get_mut(t.get()) {
            Some(c) => *c += 1,
            None => return Err(Error::UnknownType(format!("#{}", t.0))),
        }
    }
    for t in inst.indices() {
        let spec = inst.spec(t);
        let used = counts[t.get()];
        if used == 0 {
            return Err(Error::MissingType(spec.id.to_string()));
        }
        if used > spec.capacity as usize {
            return Err(Error::CapacityExceeded {
                id: spec.id.to_string(),
                used,
                capacity: spec.capacity,
            });
        }
    }
    Ok(())
}

/// On-disk form of a sequence: `{"entries": ["A","B","A"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub entries: Vec<String>,
}

impl SequenceFile {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("sequence serialises");
        out.push('\n');
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::json(path, e))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn resolve(&self, inst: &Instance) -> Result<InjectionSequence> {
        InjectionSequence::from_ids(inst, &self.entries)
    }
}
