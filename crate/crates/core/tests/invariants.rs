use proptest::prelude::*;

use setmax_core::audit::{brute_force_opt, dep_soundness_audit, solver_bounds, SoundnessMode};
use setmax_core::construct::{random_instance, Instance, RandomConstraint};
use setmax_core::degree::ExactDegrees;
use setmax_core::format;
use setmax_core::report::{run, without_timings, RunOptions};
use setmax_core::{
    extendible_greedy_dependency, extendible_greedy_supermodular, guess_greedy_uniform,
    simple_greedy_uniform, Algorithm, SolveResult,
};

fn constraint() -> impl Strategy<Value = RandomConstraint> {
    prop_oneof![
        (1usize..5).prop_map(|k| RandomConstraint::Uniform { k }),
        (2usize..4).prop_map(|parts| RandomConstraint::Partition { parts }),
        (2usize..4).prop_map(|parts| RandomConstraint::Intersection { parts }),
    ]
}

fn instance() -> impl Strategy<Value = Instance> {
    (5usize..10, 0usize..3, constraint(), any::<u64>())
        .prop_map(|(n, d, c, seed)| random_instance(n, d, c, seed).unwrap())
}

fn uniform_instance() -> impl Strategy<Value = (Instance, usize)> {
    (4usize..10, 0usize..3, 1usize..5, any::<u64>()).prop_map(|(n, d, k, seed)| {
        let k = k.min(n);
        (
            random_instance(n, d, RandomConstraint::Uniform { k }, seed).unwrap(),
            k,
        )
    })
}

fn check_trace(inst: &Instance, r: &SolveResult) {
    assert_eq!(r.trace.telescoped_value(), r.value);
    assert_eq!(inst.oracle.function().eval(&r.solution), r.value);
    for pair in r.trace.sets.windows(2) {
        assert!(pair[0].is_subset(&pair[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extendible_greedy_ends_in_a_base(inst in instance()) {
        for r in [
            extendible_greedy_supermodular(&inst.oracle, &inst.system).unwrap(),
            extendible_greedy_dependency(&inst.oracle, &inst.system).unwrap(),
        ] {
            prop_assert!(inst.system.is_independent(&r.solution));
            prop_assert!(inst.system.is_base(&r.solution).unwrap());
            check_trace(&inst, &r);
        }
    }

    #[test]
    fn uniform_solvers_stay_within_k((inst, k) in uniform_instance()) {
        for r in [
            simple_greedy_uniform(&inst.oracle, k).unwrap(),
            guess_greedy_uniform(&inst.oracle, k).unwrap(),
        ] {
            prop_assert!(r.solution.len() <= k);
            prop_assert_eq!(inst.oracle.function().eval(&r.solution), r.value.clone());
        }
    }

    #[test]
    fn every_bound_holds(inst in instance()) {
        let cert = brute_force_opt(&inst.oracle, &inst.system).unwrap();
        let mut results = vec![
            extendible_greedy_supermodular(&inst.oracle, &inst.system).unwrap(),
            extendible_greedy_dependency(&inst.oracle, &inst.system).unwrap(),
        ];
        if let Some(k) = inst.system.uniform_rank() {
            results.push(simple_greedy_uniform(&inst.oracle, k).unwrap());
            results.push(guess_greedy_uniform(&inst.oracle, k).unwrap());
        }
        for r in &results {
            prop_assert!(r.value <= cert.opt_value);
            for b in solver_bounds(r, &inst.oracle, &inst.system, &cert) {
                prop_assert!(b.holds, "{:?} {}", r.algorithm, b.name);
            }
        }
    }

    #[test]
    fn oracle_sets_are_nested_and_sound(inst in instance()) {
        let exact = ExactDegrees::compute(inst.oracle.function().as_ref(), 10).unwrap();
        for u in 0..inst.n() {
            prop_assert!(inst.oracle.sdep(u).is_subset(inst.oracle.dep(u)));
            prop_assert!(exact.sdep[u].is_subset(&exact.dep[u]));
            prop_assert!(exact.dep[u].is_subset(inst.oracle.dep(u)));
            prop_assert!(exact.sdep[u].is_subset(inst.oracle.sdep(u)));
        }
        for mode in [SoundnessMode::Supermodular, SoundnessMode::Dependency] {
            prop_assert!(dep_soundness_audit(&inst.oracle, mode, Some(10)).unwrap().holds);
        }
    }

    #[test]
    fn reports_are_deterministic(inst in instance()) {
        let opts = RunOptions { opt: true, audit: false, ..RunOptions::default() };
        let algs = [Algorithm::ExtSuper, Algorithm::ExtDep];
        let a = without_timings(&run(&inst, &algs, &opts).unwrap());
        let b = without_timings(&run(&inst, &algs, &opts).unwrap());
        prop_assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn instance_files_round_trip(inst in instance()) {
        let text = format::to_json(&inst);
        let back = format::from_json(&text).unwrap();
        prop_assert_eq!(back.fingerprint(), inst.fingerprint());
        prop_assert_eq!(format::to_json(&back), text);
    }
}
