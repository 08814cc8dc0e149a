use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of a product type. Non-empty and unique within an instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeId(String);

impl TypeId {
    pub fn new(id: impl Into<String>) -> Self {
        TypeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

impl From<&str> for TypeId {
    fn from(s: &str) -> Self {
        TypeId(s.to_owned())
    }
}

/// Position of a type inside its [`Instance`]. Sequences and assignments store
/// these instead of ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeIndex(pub u32);

impl TypeIndex {
    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpec {
    pub id: TypeId,
    pub demand: u32,
    pub capacity: u32,
}

/// A validated job: slot count plus per-type demand and (clamped) capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    slots: u32,
    types: Vec<TypeSpec>,
}

/// Emitted when a declared capacity exceeds the slot count and is clamped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClampWarning {
    pub id: TypeId,
    pub declared: u32,
    pub clamped: u32,
}

impl fmt::Display for ClampWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "capacity of `{}` clamped from {} to {}",
            self.id, self.declared, self.clamped
        )
    }
}

/// On-disk form of an instance, before validation.
///
/// Numbers are signed so that negative values surface as `InvalidInstance`
/// rather than as parse errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub slots: i64,
    pub types: Vec<TypeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub id: String,
    pub demand: i64,
    pub capacity: i64,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("instance serialises");
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
}

fn positive(value: i64, what: &str, id: &str) -> Result<u32> {
    if value < 1 {
        return Err(Error::InvalidInstance(format!(
            "{what} of `{id}` must be positive, got {value}"
        )));
    }
    u32::try_from(value)
        .map_err(|_| Error::InvalidInstance(format!("{what} of `{id}` is too large: {value}")))
}

/// Checks every instance invariant and clamps capacities above the slot count.
pub fn validate_instance(raw: &InstanceFile) -> Result<(Instance, Vec<ClampWarning>)> {
    if raw.slots < 1 {
        return Err(Error::InvalidInstance(format!(
            "slot count must be positive, got {}",
            raw.slots
        )));
    }
    let slots = u32::try_from(raw.slots)
        .map_err(|_| Error::InvalidInstance(format!("slot count too large: {}", raw.slots)))?;
    if raw.types.is_empty() {
        return Err(Error::InvalidInstance("instance has no types".into()));
    }

    let mut seen = HashSet::new();
    let mut types = Vec::with_capacity(raw.types.len());
    let mut warnings = Vec::new();
    for entry in &raw.types {
        if entry.id.is_empty() {
            return Err(Error::InvalidInstance("empty type id".into()));
        }
        if !seen.insert(entry.id.as_str()) {
            return Err(Error::InvalidInstance(format!(
                "duplicate type id `{}`",
                entry.id
            )));
        }
        let demand = positive(entry.demand, "demand", &entry.id)?;
        let declared = positive(entry.capacity, "capacity", &entry.id)?;
        let capacity = declared.min(slots);
        if capacity < declared {
            warnings.push(ClampWarning {
                id: TypeId::new(&entry.id),
                declared,
                clamped: capacity,
            });
        }
        types.push(TypeSpec {
            id: TypeId::new(&entry.id),
            demand,
            capacity,
        });
    }
    Ok((Instance { slots, types }, warnings))
}

impl Instance {
    /// Builds an instance from `(id, demand, capacity)` triples, failing on any
    /// violated invariant. Oversized capacities are clamped silently; use
    /// [`validate_instance`] to see the warnings.
    pub fn new<'a>(slots: u32, types: impl IntoIterator<Item = (&'a str, u32, u32)>) -> Result<Self> {
        let raw = InstanceFile {
            slots: i64::from(slots),
            types: types
                .into_iter()
                .map(|(id, d, c)| TypeEntry {
                    id: id.to_owned(),
                    demand: i64::from(d),
                    capacity: i64::from(c),
                })
                .collect(),
        };
        validate_instance(&raw).map(|(inst, _)| inst)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, Vec<ClampWarning>)> {
        validate_instance(&InstanceFile::load(path)?)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            slots: i64::from(self.slots),
            types: self
                .types
                .iter()
                .map(|t| TypeEntry {
                    id: t.id.as_str().to_owned(),
                    demand: i64::from(t.demand),
                    capacity: i64::from(t.capacity),
                })
                .collect(),
        }
    }

    #[inline]
    pub fn slots(&self) -> u32 {
        self.slots
    }

    #[inline]
    pub fn types(&self) -> &[TypeSpec] {
        &self.types
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    #[inline]
    pub fn spec(&self, t: TypeIndex) -> &TypeSpec {
        &self.types[t.get()]
    }

    pub fn index_of(&self, id: &str) -> Option<TypeIndex> {
        self.types
            .iter()
            .position(|t| t.id.as_str() == id)
            .map(|i| TypeIndex(i as u32))
    }

    pub fn indices(&self) -> impl Iterator<Item = TypeIndex> + '_ {
        (0..self.types.len()).map(|i| TypeIndex(i as u32))
    }

    pub fn total_demand(&self) -> u64 {
        self.types.iter().map(|t| u64::from(t.demand)).sum()
    }

    /// Number of moulds over all types, i.e. the length of a full injection sequence.
    pub fn total_moulds(&self) -> usize {
        self.types.iter().map(|t| t.capacity as usize).sum()
    }
}
