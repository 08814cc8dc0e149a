use super::instance::Instance;

/// Rounds needed by the slowest type: `max ceil(demand / capacity)`.
pub fn critical_rounds(inst: &Instance) -> u64 {
    inst.types()
        .iter()
        .map(|t| u64::from(t.demand).div_ceil(u64::from(t.capacity)))
        .max()
        .unwrap_or(0)
}

/// Lower bound on the optimal makespan.
///
/// Every item needs its own step, and no type can produce more than
/// `capacity` items per round, so after `r* - 1` full rounds each type still
/// has `max(0, demand - (r* - 1) * capacity)` items left.
pub fn lower_bound(inst: &Instance) -> u64 {
    let n = u64::from(inst.slots());
    let r = critical_rounds(inst);
    let residual: u64 = inst
        .types()
        .iter()
        .map(|t| u64::from(t.demand).saturating_sub((r - 1) * u64::from(t.capacity)))
        .sum();
    inst.total_demand().max((r - 1) * n + residual) + n - 1
}

/// Upper bound on the makespan of any decoded full injection sequence; never
/// more than twice [`lower_bound`].
pub fn worst_case_bound(inst: &Instance) -> u64 {
    let n = u64::from(inst.slots());
    (critical_rounds(inst) - 1) * n + inst.total_demand() + n - 1
}
