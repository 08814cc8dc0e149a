//! Jobs, injection sequences, belt assignments and the bounds that relate them.

mod assignment;
mod bounds;
mod eval;
mod instance;
mod sequence;

pub use assignment::{
    decode, short_injection_sequence, AssignmentReport, BeltAssignment, InjectionEvent,
    LoadProfile,
};
pub use bounds::{critical_rounds, lower_bound, worst_case_bound};
pub use eval::Evaluator;
pub use instance::{
    validate_instance, ClampWarning, Instance, InstanceFile, TypeEntry, TypeId, TypeIndex,
    TypeSpec,
};
pub use sequence::{InjectionSequence, SequenceFile};
