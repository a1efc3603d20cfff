use itertools::Itertools;
use proptest::prelude::*;

use helly_core::complex::is_d_collapsible;
use helly_core::generators::{gen_instance, GenSpec, Instance};
use helly_core::helly::{
    colorful_helly_points, lemma2_holds, lemma2_witness, max_intersecting, radon_partition,
    HellyError,
};
use helly_core::instance::{parse_instance, serialize_instance, InstanceDoc, Strictness};
use helly_core::interval::intersect_indices;
use helly_core::piercing::{blow_up, fractional_lp, pierce};
use helly_core::{
    f_value, hull, minimal_dinterval, nerve, sweep_collapse, trace_of, Guards, Point, Rat,
    SweepError,
};

fn instance(d: usize, points: usize, n: usize, seed: u64) -> Instance {
    gen_instance(&GenSpec::uniform(d, points, n, seed)).expect("valid spec")
}

fn arb_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (1usize..=3, 1usize..=5, 1..=max_n, any::<u64>()).prop_map(|(d, p, n, s)| instance(d, p, n, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_is_a_closure(inst in arb_instance(4), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let all = inst.ground.points();
        let a: Vec<Point> = picks.iter().map(|i| i.get(&all).clone()).collect();
        let h = hull(&inst.ground, &a).unwrap();
        prop_assert!(a.iter().all(|p| h.contains_point(p)));
        prop_assert_eq!(hull(&inst.ground, &h.points()).unwrap(), h.clone());
        for t in &inst.sets {
            if a.iter().all(|p| t.contains_point(p)) {
                prop_assert!(h.is_subset_of(t));
            }
        }
    }

    #[test]
    fn traces_are_canonical(inst in arb_instance(5)) {
        for t in &inst.sets {
            prop_assert_eq!(&trace_of(&minimal_dinterval(t), &inst.ground).unwrap(), t);
            if !t.is_empty() {
                prop_assert_eq!(&hull(&inst.ground, &t.points()).unwrap(), t);
            }
        }
    }

    #[test]
    fn f_is_monotone_under_intersection(inst in arb_instance(5)) {
        for (a, b) in inst.sets.iter().tuple_combinations() {
            let both = a.intersect(b);
            prop_assert!(f_value(&both) <= f_value(a));
            prop_assert!(f_value(&both) <= f_value(b));
        }
    }

    #[test]
    fn nerve_matches_brute_force(inst in arb_instance(6)) {
        let k = nerve(&inst.sets, &Guards::default()).unwrap();
        let n = inst.sets.len();
        for size in 1..=n {
            for idx in (0..n).combinations(size) {
                let labels: Vec<i64> = idx.iter().map(|&i| i as i64 + 1).collect();
                let meets = !intersect_indices(&inst.sets, &idx).unwrap().is_empty();
                prop_assert_eq!(k.contains(&labels), meets);
            }
        }
    }

    #[test]
    fn sweep_only_fails_on_family_mismatch(inst in arb_instance(6)) {
        let g = Guards::default();
        match sweep_collapse(&inst.sets, &g) {
            Ok(seq) => {
                prop_assert!(seq.replay(&nerve(&inst.sets, &g).unwrap()).is_ok());
                prop_assert!(seq.max_face_dim() <= 2 * inst.ground.d() as isize - 2);
            }
            Err(e) => prop_assert!(matches!(e, SweepError::FamilyMismatch(_)), "{}", e),
        }
    }

    #[test]
    fn oracle_witnesses_replay(inst in arb_instance(6)) {
        let g = Guards::default();
        let k = nerve(&inst.sets, &g).unwrap();
        let b = 2 * inst.ground.d() - 1;
        let seq = is_d_collapsible(&k, b, &g).unwrap();
        prop_assert!(seq.as_ref().is_some_and(|s| s.replay(&k).is_ok()));
        // Every complex on n vertices is n-collapsible.
        prop_assert!(is_d_collapsible(&k, inst.sets.len().max(1), &g).unwrap().is_some());
    }

    #[test]
    fn lp_sandwich(inst in arb_instance(8)) {
        let g = Guards::default();
        let r = pierce(&inst.sets, &g).unwrap();
        prop_assert!(r.sandwich_holds());
        let lp = fractional_lp(&inst.sets, &g).unwrap();
        prop_assert!(lp.problem.verify(&lp.solution));
        prop_assert!(inst.sets.iter().all(|s| r.piercing_points.iter().any(|p| s.contains_point(p))));
        for (a, b) in r.matching.iter().tuple_combinations() {
            prop_assert!(!inst.sets[*a].meets(&inst.sets[*b]));
        }
    }

    #[test]
    fn radon_partitions_verify(d in 1usize..=3, p in 3usize..=5, seed in any::<u64>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 7)) {
        let inst = instance(d, p, 1, seed);
        let all = inst.ground.points();
        let a: Vec<Point> = picks.iter().map(|i| i.get(&all).clone()).unique().take(2 * d + 1).collect();
        prop_assume!(a.len() == 2 * d + 1);
        let part = radon_partition(&inst.ground, &a).unwrap();
        prop_assert!(part.is_some_and(|p| p.verify(&inst.ground)));
    }

    #[test]
    fn lemma2_witness_contracts(inst in arb_instance(6)) {
        let d = inst.ground.d();
        for k in 1..=d {
            if let Ok(w) = lemma2_witness(&inst.sets, k) {
                prop_assert!(w.len() <= 2 * d - k);
                prop_assert!(lemma2_holds(&inst.sets, k, &w));
            }
        }
    }

    #[test]
    fn blow_up_keeps_a_large_intersecting_part(inst in arb_instance(6), mult in prop::collection::vec(0usize..4, 6)) {
        let m = &mult[..inst.sets.len()];
        prop_assume!(m.iter().any(|&x| x > 0));
        let b = blow_up(&inst.sets, m).unwrap();
        let nu_star = fractional_lp(&inst.sets, &Guards::default()).unwrap().solution.objective;
        let (best, _) = max_intersecting(&b.sets);
        prop_assert!(&Rat::from_int(best as i64) * &nu_star >= Rat::from_int(b.sets.len() as i64));
    }

    #[test]
    fn instance_round_trip(inst in arb_instance(5)) {
        let doc = InstanceDoc::from_instance(inst);
        let text = serialize_instance(&doc);
        let (back, _) = parse_instance(&text, Strictness::Strict).unwrap();
        prop_assert_eq!(&back.instance.sets, &doc.instance.sets);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn colorful_points_exist_under_the_hypothesis(d in 1usize..=2, p in 2usize..=4, per in 1usize..=2, seed in any::<u64>(), kk in 1usize..=2) {
        let k = kk.min(d);
        let mut spec = GenSpec::uniform(d, p, per, seed);
        spec.presence = Rat::one();
        spec.width_min = p.div_ceil(2);
        spec.families = 2 * d - k + 1;
        let inst = gen_instance(&spec).unwrap();
        let fams = inst.family_sets();
        match colorful_helly_points(&fams, k) {
            Ok(out) => {
                prop_assert_eq!(out.points.len(), k);
                prop_assert!(fams[out.claim_family].iter().all(|c| out.points.iter().all(|q| c.contains_point(q))));
            }
            Err(e) => prop_assert!(matches!(e, HellyError::PreconditionFailed { .. }), "{}", e),
        }
    }
}
