use belt_makespan::model::{
    decode, lower_bound, short_injection_sequence, worst_case_bound, Evaluator, InjectionSequence, Instance,
};
use belt_makespan::solvers::{local_search, rng_from_seed, run_restarts, uniform_sequence, Budget, Generator, SearchParams};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn instance() -> impl Strategy<Value = Instance> {
    (1u32..6, prop::collection::vec((1u32..12, 1u32..5), 1..5)).prop_map(|(slots, types)| {
        let ids = ["A", "B", "C", "D"];
        let specs: Vec<(&str, u32, u32)> = types
            .iter()
            .enumerate()
            .map(|(i, &(d, c))| (ids[i], d, c.min(d).min(slots)))
            .collect();
        Instance::new(slots, specs).unwrap()
    })
}

fn full_sequence(inst: &Instance, seed: u64) -> InjectionSequence {
    uniform_sequence(inst, &mut rng_from_seed(seed))
}

/// A sequence with at least one mould of every type, possibly fewer than
/// the capacity allows.
fn partial_sequence(inst: &Instance, seed: u64) -> InjectionSequence {
    let mut rng = rng_from_seed(seed);
    let mut entries = Vec::new();
    for t in inst.indices() {
        let c = inst.spec(t).capacity;
        let k = 1 + (seed as u32 ^ t.0) % c;
        entries.extend(std::iter::repeat_n(t, k as usize));
    }
    entries.shuffle(&mut rng);
    InjectionSequence::new(inst, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn evaluator_matches_decoder(inst in instance(), seed in any::<u64>()) {
        let mut ev = Evaluator::new(&inst);
        for seq in [full_sequence(&inst, seed), partial_sequence(&inst, seed)] {
            let b = decode(&inst, &seq).unwrap();
            prop_assert_eq!(ev.makespan(seq.entries()), b.makespan(&inst).unwrap());
        }
    }

    #[test]
    fn decoded_full_sequences_are_normal_form(inst in instance(), seed in any::<u64>()) {
        let seq = full_sequence(&inst, seed);
        let b = decode(&inst, &seq).unwrap();
        let report = b.check(&inst);
        prop_assert!(report.all_ok(), "{:?} for {}", report, b.render(&inst));
        prop_assert_eq!(report.first_violation, None);
    }

    #[test]
    fn short_sequence_round_trips(inst in instance(), seed in any::<u64>()) {
        let seq = full_sequence(&inst, seed);
        let b = decode(&inst, &seq).unwrap();
        let short = short_injection_sequence(&inst, &b).unwrap();
        prop_assert!(short.is_subsequence_of(&seq));
        prop_assert_eq!(decode(&inst, &short).unwrap(), b);
    }

    #[test]
    fn makespan_is_within_bounds(inst in instance(), seed in any::<u64>()) {
        let ms = decode(&inst, &full_sequence(&inst, seed)).unwrap().makespan(&inst).unwrap();
        prop_assert!(lower_bound(&inst) <= ms);
        prop_assert!(ms <= worst_case_bound(&inst));
    }

    #[test]
    fn injections_never_exceed_capacity(inst in instance(), seed in any::<u64>()) {
        let b = decode(&inst, &full_sequence(&inst, seed)).unwrap();
        let mut used = vec![0u32; inst.type_count()];
        for ev in b.injections() {
            used[ev.ty.get()] += 1;
        }
        for t in inst.indices() {
            prop_assert!(used[t.get()] <= inst.spec(t).capacity);
        }
    }

    #[test]
    fn load_profile_conserves_demand(inst in instance(), seed in any::<u64>()) {
        let b = decode(&inst, &partial_sequence(&inst, seed)).unwrap();
        let load = b.load_profile();
        prop_assert_eq!(load.total(), inst.total_demand());
        prop_assert!(load.peak() <= inst.slots());
    }

    #[test]
    fn local_search_never_worsens_the_start(inst in instance(), seed in any::<u64>()) {
        let start = full_sequence(&inst, seed);
        let start_ms = Evaluator::new(&inst).makespan(start.entries());
        let params = SearchParams::new(5, 5).unwrap();
        let res = local_search(&inst, &start, &params, &mut rng_from_seed(seed.wrapping_add(1)));
        prop_assert!(res.best_makespan <= start_ms);
        let again = decode(&inst, &res.best_sequence).unwrap().makespan(&inst).unwrap();
        prop_assert_eq!(again, res.best_makespan);
    }

    #[test]
    fn restarts_are_deterministic(inst in instance(), seed in any::<u64>()) {
        let params = SearchParams::default();
        let budget = Budget::sequences(60);
        let a = run_restarts(&inst, Generator::Nr, &params, &budget, seed);
        let b = run_restarts(&inst, Generator::Nr, &params, &budget, seed);
        prop_assert_eq!(&a.best_sequence, &b.best_sequence);
        prop_assert_eq!(a.best_makespan, b.best_makespan);
        prop_assert_eq!(a.sequences_evaluated, 60);
    }
}

#[test]
fn evaluator_agrees_on_long_stable_runs() {
    // large demand with few moulds: most of the run is whole repeated rotations
    let inst = Instance::new(7, [("A", 5000, 3), ("B", 333, 2), ("C", 41, 1)]).unwrap();
    let mut ev = Evaluator::new(&inst);
    for seed in 0..50 {
        let seq = full_sequence(&inst, seed);
        let expected = decode(&inst, &seq).unwrap().makespan(&inst).unwrap();
        assert_eq!(ev.makespan(seq.entries()), expected);
    }
}
