use std::sync::Arc;

use proptest::prelude::*;

use mincomp::complement::{essentiality, exists_witness, is_complement, is_minimal_complement_for, prune_to_minimal};
use mincomp::diffset::{diffset_representation, DiffsetStatus};
use mincomp::literal::{parse_group, parse_set};
use mincomp::oracle::{
    naive_coverage, naive_difference_set, naive_is_maximal_supplement, naive_is_minimal, naive_is_supplement,
    naive_sumset, oracle_exists_witness, oracle_maximal_supplement, oracle_solid,
};
use mincomp::sumset::{coverage, difference_set, sumset, translate, CoverTally};
use mincomp::supplement::{is_maximal_supplement_for, is_solid, is_supplement, maximal_supplement_witness};
use mincomp::{Exec, Group, GroupSet, SearchLimits, Verdict};

#[rustfmt::skip]
const SHAPES: &[&[usize]] = &[
    &[2], &[5], &[7], &[8], &[9], &[12], &[2, 2], &[2, 4], &[3, 3], &[2, 6], &[2, 2, 2], &[4, 4], &[2, 2, 3],
    &[30], &[64], &[65], &[2, 40], &[130],
];

fn group_and_masks(max_order: usize) -> impl Strategy<Value = (Arc<Group>, Vec<bool>, Vec<bool>)> {
    let shapes: Vec<&'static [usize]> = SHAPES
        .iter()
        .copied()
        .filter(|f| f.iter().product::<usize>() <= max_order)
        .collect();
    prop::sample::select(shapes).prop_flat_map(|factors| {
        let g = Group::new(factors).unwrap();
        let n = g.order();
        (
            Just(g),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
    })
}

fn to_set(g: &Arc<Group>, mask: &[bool]) -> GroupSet {
    GroupSet::from_elements(g, mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)).unwrap()
}

fn non_empty(g: &Arc<Group>, mask: &[bool]) -> GroupSet {
    let mut s = to_set(g, mask);
    if s.is_empty() {
        s.insert(0);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kernels_match_naive((g, a, b) in group_and_masks(200)) {
        let (a, b) = (to_set(&g, &a), to_set(&g, &b));
        prop_assert_eq!(sumset(&a, &b).unwrap(), naive_sumset(&a, &b));
        prop_assert_eq!(difference_set(&a), naive_difference_set(&a));
        let counts: Vec<u64> = coverage(&a, &b).unwrap().counts().iter().map(|&k| u64::from(k)).collect();
        prop_assert_eq!(counts.clone(), naive_coverage(&a, &b));
        let tally = CoverTally::new(&a, &b).unwrap();
        for (x, &k) in counts.iter().enumerate() {
            prop_assert_eq!(tally.once.contains(x), k >= 1);
            prop_assert_eq!(tally.twice.contains(x), k >= 2);
        }
    }

    #[test]
    fn sumset_laws((g, a, b) in group_and_masks(200), t in 0usize..200) {
        let (a, b) = (to_set(&g, &a), to_set(&g, &b));
        let t = t % g.order();
        prop_assert_eq!(sumset(&a, &b).unwrap(), sumset(&b, &a).unwrap());
        prop_assert_eq!(sumset(&translate(&a, t), &b).unwrap(), translate(&sumset(&a, &b).unwrap(), t));
        let d = difference_set(&a);
        prop_assert_eq!(d.negated(), d.clone());
        prop_assert_eq!(d.contains(0), !a.is_empty());
    }

    #[test]
    fn hex_round_trip((g, a, _b) in group_and_masks(200)) {
        let a = to_set(&g, &a);
        let back = parse_set(&parse_group(&g.spec()).unwrap(), &a.to_hex()).unwrap();
        prop_assert_eq!(back.to_vec(), a.to_vec());
    }

    #[test]
    fn essentiality_and_pruning((g, w, c) in group_and_masks(130)) {
        let w = non_empty(&g, &w);
        let c = non_empty(&g, &c);
        if !is_complement(&w, &c).unwrap() {
            prop_assert!(essentiality(&w, &c).is_err());
            return Ok(());
        }
        let report = essentiality(&w, &c).unwrap();
        for x in c.iter() {
            let mut smaller = c.clone();
            smaller.remove(x);
            prop_assert_eq!(report.essential.contains(x), !is_complement(&w, &smaller).unwrap());
        }
        prop_assert_eq!(report.is_minimal(), is_minimal_complement_for(&w, &c).unwrap());
        let pruned = prune_to_minimal(&w, &c).unwrap();
        prop_assert!(pruned.is_subset(&c));
        prop_assert!(is_minimal_complement_for(&w, &pruned).unwrap());
        if g.order() <= 16 {
            prop_assert_eq!(report.is_minimal(), naive_is_minimal(&w, &c));
        }
    }

    #[test]
    fn decision_matches_oracle((g, _w, c) in group_and_masks(12)) {
        let c = non_empty(&g, &c);
        let cert = exists_witness(&c, &SearchLimits::default()).unwrap();
        prop_assert_ne!(cert.verdict, Verdict::Unknown);
        prop_assert_eq!(cert.verdict == Verdict::Yes, oracle_exists_witness(&c).is_some());
        if let Some(w) = &cert.witness {
            prop_assert!(naive_is_minimal(w, &c));
        }
    }

    #[test]
    fn decision_is_invariant_under_symmetry((g, _w, c) in group_and_masks(12), t in 0usize..12) {
        let c = non_empty(&g, &c);
        let t = t % g.order();
        let limits = SearchLimits::default();
        let base = exists_witness(&c, &limits).unwrap().verdict;
        prop_assert_eq!(exists_witness(&translate(&c, t), &limits).unwrap().verdict, base);
        prop_assert_eq!(exists_witness(&c.negated(), &limits).unwrap().verdict, base);
    }

    #[test]
    fn policies_agree((g, _w, c) in group_and_masks(65)) {
        let c = non_empty(&g, &c);
        let par = SearchLimits { max_nodes: 20_000, exec: Exec::Parallel, ..SearchLimits::default() };
        let a = exists_witness(&c, &par).unwrap();
        let b = exists_witness(&c, &par.sequential()).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.witness, b.witness);
        prop_assert_eq!(a.method, b.method);
    }

    #[test]
    fn supplements_match_naive((g, w, c) in group_and_masks(12)) {
        let w = non_empty(&g, &w);
        let c = non_empty(&g, &c);
        prop_assert_eq!(is_supplement(&w, &c).unwrap(), naive_is_supplement(&w, &c));
        prop_assert_eq!(is_maximal_supplement_for(&w, &c).unwrap(), naive_is_maximal_supplement(&w, &c));
        let solid = is_solid(&c).unwrap();
        prop_assert_eq!(solid.solid, oracle_solid(&c));
        if let Some(x) = solid.violator {
            let mut d = c.clone();
            d.insert(x);
            prop_assert_eq!(difference_set(&d), difference_set(&c));
        }
        let cert = maximal_supplement_witness(&c, &SearchLimits::default()).unwrap();
        prop_assert_eq!(cert.verdict == Verdict::Yes, oracle_maximal_supplement(&c).is_some());
        if let Some(w) = &cert.witness {
            prop_assert!(naive_is_maximal_supplement(w, &c));
        }
    }

    #[test]
    fn difference_sets_are_representable((g, a, _b) in group_and_masks(64)) {
        let a = non_empty(&g, &a);
        let v = difference_set(&a);
        let found = diffset_representation(&v, &SearchLimits::default()).unwrap();
        match found.status {
            DiffsetStatus::Found => prop_assert_eq!(difference_set(found.a.as_ref().unwrap()), v),
            DiffsetStatus::BudgetExhausted => {}
            DiffsetStatus::ProvenNone => prop_assert!(false, "{} is A - A for A = {}", v, a),
        }
    }
}
