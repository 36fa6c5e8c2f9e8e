use proptest::prelude::*;
use regmat::gf2::Gf2Matrix;
use regmat::matroid::{is_isomorphic_bruteforce, BinaryMatroid, GroundSubset};

fn matroid() -> impl Strategy<Value = BinaryMatroid> {
    (1usize..=4, 1usize..=9).prop_flat_map(|(k, n)| {
        prop::collection::vec(0u64..(1 << k), n).prop_filter_map("rank zero", move |cols| {
            let m = BinaryMatroid::from_spanning_rows(&Gf2Matrix::from_columns(k, &cols).unwrap());
            (m.rank() > 0).then_some(m)
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = GroundSubset> {
    (0u64..(1 << n)).prop_map(GroundSubset::from_mask)
}

fn sorted(v: &[GroundSubset]) -> Vec<GroundSubset> {
    let mut v = v.to_vec();
    v.sort();
    v
}

proptest! {
    #[test]
    fn circuits_are_cocircuits_of_the_dual(m in matroid()) {
        prop_assert_eq!(sorted(m.circuits().unwrap()), sorted(m.dual().cocircuits().unwrap()));
        prop_assert_eq!(sorted(m.cocircuits().unwrap()), sorted(m.dual().circuits().unwrap()));
        prop_assert_eq!(m.dual().rank(), m.size() - m.rank());
    }

    #[test]
    fn circuit_cocircuit_intersections_are_never_singletons(m in matroid()) {
        for c in m.circuits().unwrap() {
            for d in m.cocircuits().unwrap() {
                prop_assert_ne!(c.intersection(*d).len(), 1);
            }
        }
    }

    #[test]
    fn circuits_are_minimal_dependent(m in matroid()) {
        for c in m.circuits().unwrap() {
            prop_assert!(!m.is_independent(*c));
            for e in c.iter() {
                let mut smaller = *c;
                smaller.remove(e);
                prop_assert!(m.is_independent(smaller));
            }
        }
    }

    #[test]
    fn flats_are_closed_with_the_right_rank(m in matroid(), corank in 0usize..4) {
        prop_assume!(corank <= m.rank());
        let flats = m.flats_of_corank(corank).unwrap();
        for f in &flats {
            prop_assert_eq!(m.closure(*f).unwrap(), *f);
            prop_assert_eq!(m.rank_of(*f), m.rank() - corank);
        }
    }

    #[test]
    fn closure_is_idempotent(m in matroid(), seed in any::<u64>()) {
        let s = GroundSubset::from_mask(seed & m.ground().mask());
        let c = m.closure(s).unwrap();
        prop_assert!(s.is_subset(c));
        prop_assert_eq!(m.closure(c).unwrap(), c);
        prop_assert_eq!(m.rank_of(c), m.rank_of(s));
    }

    #[test]
    fn simplify_is_idempotent(m in matroid()) {
        let s = m.simplify();
        prop_assert!(s.matroid.is_simple());
        prop_assert_eq!(s.matroid.rank(), m.rank());
        let again = s.matroid.simplify();
        prop_assert_eq!(again.matroid.column_words(), s.matroid.column_words());
        let covered = s.classes.iter().fold(s.loops, |acc, c| acc.union(*c));
        prop_assert_eq!(covered, m.ground());
    }

    #[test]
    fn contraction_in_two_steps_matches_one_step(m in matroid(), seed in any::<u64>()) {
        let set = m.independent_spanning_subset(GroundSubset::from_mask(seed & m.ground().mask()));
        prop_assume!(set.len() >= 2);
        let first = set.min_element().unwrap();
        let once = m.contract_independent(set).unwrap();
        let step = m.contract_independent(GroundSubset::from_elements([first])).unwrap();
        // Remaining elements shift down by one past `first`.
        let rest = GroundSubset::from_elements(
            set.iter().filter(|&e| e != first).map(|e| e - 1),
        );
        let twice = step.contract_independent(rest).unwrap();
        prop_assert_eq!(once.rank(), m.rank() - set.len());
        prop_assert!(is_isomorphic_bruteforce(&once, &twice).unwrap());
        // Same matroid on the same labels, not just isomorphic.
        for mask in 0..(1u64 << once.size()) {
            let s = GroundSubset::from_mask(mask);
            prop_assert_eq!(once.rank_of(s), twice.rank_of(s));
        }
    }

    #[test]
    fn contraction_rank_formula(m in matroid(), a in any::<u64>(), b in any::<u64>()) {
        let set = GroundSubset::from_mask(a & m.ground().mask());
        let c = m.contract(set).unwrap();
        let survivors: Vec<usize> = (1..=m.size()).filter(|e| !set.contains(*e)).collect();
        let x = GroundSubset::from_mask(b & c.ground().mask());
        let lifted = GroundSubset::from_elements(x.iter().map(|e| survivors[e - 1]));
        prop_assert_eq!(c.rank_of(x), m.rank_of(lifted.union(set)) - m.rank_of(set));
    }

    #[test]
    fn deletion_rank_matches_restriction(m in matroid(), e in 1usize..10, a in any::<u64>()) {
        prop_assume!(e <= m.size() && m.size() > 1);
        let d = m.delete(e).unwrap();
        let x = GroundSubset::from_mask(a & d.ground().mask());
        let lifted = GroundSubset::from_elements(x.iter().map(|p| if p >= e { p + 1 } else { p }));
        prop_assert_eq!(d.rank_of(x), m.rank_of(lifted));
    }

    #[test]
    fn dual_of_dual_is_the_same_matroid(m in matroid()) {
        let dd = m.dual().dual();
        prop_assume!(dd.rank() > 0);
        for mask in 0..(1u64 << m.size()) {
            let s = GroundSubset::from_mask(mask);
            prop_assert_eq!(dd.rank_of(s), m.rank_of(s));
        }
    }

    #[test]
    fn connectivity_is_shared_by_the_dual(m in matroid()) {
        let d = m.dual();
        prop_assume!(d.rank() > 0 && m.size() > 1);
        prop_assert_eq!(m.is_connected().unwrap(), d.is_connected().unwrap());
    }

    #[test]
    fn subset_order_matches_element_lists(n in 1usize..10, a in subset(9), b in subset(9)) {
        let (a, b) = (
            GroundSubset::from_mask(a.mask() & ((1 << n) - 1)),
            GroundSubset::from_mask(b.mask() & ((1 << n) - 1)),
        );
        prop_assert_eq!(a.cmp(&b), a.elements().cmp(&b.elements()));
    }
}
