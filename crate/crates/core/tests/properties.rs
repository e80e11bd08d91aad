use proptest::prelude::*;

use matroid_core::bases::{greedy_base, is_base, mb_classes};
use matroid_core::closure::{closure, closure_by_intersection, is_closed};
use matroid_core::coloring::{chromatic_number, color_from_base, is_proper, Listing};
use matroid_core::constructions::{graphic_from_pairs, linear, TableSpec, VectorSpec};
use matroid_core::contraction::{contract, contracted_rank_by_min};
use matroid_core::format::{parse_matroid, serialize, MatroidSpec};
use matroid_core::{ElementSet, Limits, Matroid};

fn graphic_strategy() -> impl Strategy<Value = Matroid> {
    prop::collection::vec((0usize..5, 0usize..5), 0..8).prop_map(|pairs| graphic_from_pairs(&pairs))
}

fn linear_strategy() -> impl Strategy<Value = Matroid> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..4).prop_flat_map(|(p, dim)| {
        prop::collection::vec(prop::collection::vec(0..p, dim), 0..8).prop_map(move |vs| {
            linear(&VectorSpec::new(p, dim, vs).unwrap())
        })
    })
}

fn matroid_strategy() -> impl Strategy<Value = Matroid> {
    prop_oneof![graphic_strategy(), linear_strategy()]
}

fn subset(m: &Matroid, bits: u64) -> ElementSet {
    ElementSet::from_bits(bits) & m.ground()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructions_satisfy_axioms(m in matroid_strategy()) {
        prop_assert!(m.validate_axioms().unwrap().is_pass());
        prop_assert!(m.check_circuit_elimination().unwrap().is_pass());
    }

    #[test]
    fn circuits_are_minimal_dependent(m in matroid_strategy()) {
        for c in m.circuits().unwrap() {
            let c = c.members();
            prop_assert!(!m.is_independent(c).unwrap());
            for x in c {
                prop_assert!(m.is_independent(c.without(x)).unwrap());
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(m in matroid_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (subset(&m, a), subset(&m, b));
        let ca = closure(&m, a).unwrap();
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(closure(&m, ca).unwrap(), ca);
        prop_assert!(is_closed(&m, ca).unwrap());
        prop_assert_eq!(m.rank(ca).unwrap(), m.rank(a).unwrap());
        prop_assert!(ca.is_subset(closure(&m, a | b).unwrap()));
        prop_assert_eq!(closure_by_intersection(&m, a).unwrap(), ca);
    }

    #[test]
    fn contraction_rank_is_the_minimum(m in matroid_strategy(), z in any::<u64>(), a in any::<u64>()) {
        let z = subset(&m, z);
        let c = contract(&m, z).unwrap();
        prop_assert!(c.matroid.validate_axioms().unwrap().is_pass());
        let a_local = subset(&c.matroid, a);
        let a_parent = c.to_parent(a_local);
        prop_assert_eq!(
            c.matroid.rank(a_local).unwrap(),
            contracted_rank_by_min(&m, z, a_parent).unwrap()
        );
        prop_assert_eq!(c.matroid.is_loop_free(), is_closed(&m, z).unwrap());
    }

    #[test]
    fn greedy_base_and_coloring(m in matroid_strategy(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.len()).collect();
        let k = seed as usize % (m.len().max(1));
        order.rotate_left(k);
        let b = greedy_base(&m, &order).unwrap();
        prop_assert!(is_base(&m, b.set()).unwrap());
        if m.is_loop_free() {
            let d = mb_classes(&m, &b).unwrap();
            let covered = d.classes.iter().fold(ElementSet::EMPTY, |acc, (_, c)| {
                assert!(acc.is_disjoint(*c));
                acc | *c
            });
            prop_assert_eq!(covered, m.ground());
            let l = Listing::uniform(m.len(), d.max_class_size());
            let phi = color_from_base(&m, &b, &l).unwrap();
            prop_assert!(is_proper(&m, &phi).unwrap());
            let chr = chromatic_number(&m).unwrap();
            prop_assert!(is_proper(&m, &chr.witness).unwrap());
            prop_assert!(chr.value <= d.max_class_size());
        } else {
            prop_assert!(chromatic_number(&m).is_err());
        }
    }

    #[test]
    fn table_round_trip(m in matroid_strategy()) {
        let spec = MatroidSpec::Table(TableSpec::from_matroid(&m).unwrap());
        let back = parse_matroid(&serialize(&spec), Limits::default()).unwrap();
        prop_assert_eq!(back.spec, spec);
        for s in ElementSet::all(m.len()) {
            prop_assert_eq!(back.matroid.rank(s).unwrap(), m.rank(s).unwrap());
        }
    }

    #[test]
    fn subset_literals_round_trip(bits in any::<u64>()) {
        let s = ElementSet::from_bits(bits);
        prop_assert_eq!(s.to_string().parse::<ElementSet>().unwrap(), s);
    }
}
