use std::collections::HashSet;

use acrough::antichain::{build_ac_lattice, build_acm_lattice, maximal_antichains, Antichain};
use acrough::export::{export_ac, from_json, to_json, AcExport};
use acrough::format::{format_space, parse_space};
use acrough::poset::Poset;
use acrough::quotient::{build_quotient, single_antichain_cover};
use acrough::space::{numbered_universe, GranularOperatorSpace};
use acrough::subset::Subset;
use acrough::AcAlgebra;
use proptest::prelude::*;

fn granule_space(max_n: usize) -> impl Strategy<Value = GranularOperatorSpace> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 1..=n).prop_map(move |raw| {
            let mut seen = HashSet::new();
            let granules = raw
                .into_iter()
                .filter(|g| seen.insert(*g))
                .map(|g| Subset::from_bits(n, g))
                .collect();
            GranularOperatorSpace::granule_union(numbered_universe(n), granules, n).unwrap()
        })
    })
}

/// Block labels per element, normalized into a partition space.
fn partition_space(max_n: usize) -> impl Strategy<Value = (GranularOperatorSpace, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n, n).prop_map(move |labels| {
            let mut blocks: Vec<u64> = vec![0; n];
            for (x, &b) in labels.iter().enumerate() {
                blocks[b] |= 1 << x;
            }
            let granules = blocks.into_iter().filter(|&b| b != 0).map(|b| Subset::from_bits(n, b)).collect();
            let space = GranularOperatorSpace::granule_union(numbered_universe(n), granules, n).unwrap();
            (space, labels)
        })
    })
}

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let forward: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            Poset::from_pairs(n, &forward)
        })
    })
}

fn brute_force_antichains(p: &Poset) -> Vec<Antichain> {
    let n = p.len();
    let mut out: Vec<Antichain> = (0u32..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| p.is_maximal_antichain(s))
        .map(Antichain::new)
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_operators_match_class_definitions((space, labels) in partition_space(6)) {
        let n = space.size();
        for a in Subset::powerset(n) {
            let labels = &labels;
            let class = |x: usize| (0..n).filter(move |&y| labels[y] == labels[x]);
            let l = Subset::from_indices(n, (0..n).filter(|&x| class(x).all(|y| a.contains(y))));
            let u = Subset::from_indices(n, (0..n).filter(|&x| class(x).any(|y| a.contains(y))));
            prop_assert_eq!(space.approximations(a).unwrap(), (l, u));
        }
    }

    #[test]
    fn rough_order_is_a_quasi_order(space in granule_space(4)) {
        let sets: Vec<Subset> = Subset::powerset(space.size()).collect();
        for &a in &sets {
            prop_assert!(space.rough_leq(a, a).unwrap());
            for &b in &sets {
                let ab = space.rough_leq(a, b).unwrap();
                prop_assert_eq!(space.rough_equal(a, b).unwrap(), ab && space.rough_leq(b, a).unwrap());
                if !ab {
                    continue;
                }
                for &c in &sets {
                    if space.rough_leq(b, c).unwrap() {
                        prop_assert!(space.rough_leq(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn granule_union_operator_laws(space in granule_space(6)) {
        let n = space.size();
        for a in Subset::powerset(n) {
            let l = space.lower(a).unwrap();
            prop_assert_eq!(space.lower(l).unwrap(), l);
            for i in 0..n {
                let b = a.with(i);
                prop_assert!(l.is_subset(space.lower(b).unwrap()));
                prop_assert!(space.upper(a).unwrap().is_subset(space.upper(b).unwrap()));
            }
        }
    }

    #[test]
    fn quotient_classes_partition_the_powerset(space in granule_space(5)) {
        let q = build_quotient(&space).unwrap();
        prop_assert!(q.order().check_partial_order().is_ok());
        prop_assert!(q.check_bounded().is_ok());
        let mut seen = HashSet::new();
        for o in q.objects() {
            for m in &o.members {
                prop_assert!(seen.insert(m.bits()));
                prop_assert_eq!(space.approximations(*m).unwrap(), (o.lower, o.upper));
            }
        }
        prop_assert_eq!(seen.len(), 1 << space.size());
        let comparable = (0..q.len()).any(|a| (0..q.len()).any(|b| a != b && q.leq(a, b)));
        prop_assert_eq!(single_antichain_cover(&q).is_none(), comparable);
    }

    #[test]
    fn enumeration_matches_subset_scan(p in poset(8)) {
        prop_assert_eq!(maximal_antichains(&p), brute_force_antichains(&p));
    }

    #[test]
    fn maximum_sized_antichains_form_a_distributive_lattice(p in poset(8)) {
        let m = build_acm_lattice(&p).unwrap();
        prop_assert!(m.lattice().is_distributive());
    }

    #[test]
    fn antichain_lattices_satisfy_the_laws(p in poset(6)) {
        if let Ok(l) = build_ac_lattice(&p) {
            prop_assert!(l.lattice().check_laws().is_ok());
        }
    }

    #[test]
    fn text_format_round_trips(space in granule_space(5)) {
        prop_assert_eq!(parse_space(&format_space(&space), 12).unwrap(), space);
    }

    #[test]
    fn json_export_round_trips(space in granule_space(4)) {
        if let Ok(ac) = AcAlgebra::new(build_quotient(&space).unwrap()) {
            let e = export_ac(&ac);
            let back: AcExport = from_json(&to_json(&e)).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert!(back.lattice.to_lattice().is_ok());
        }
    }

    #[test]
    fn groupoid_and_modal_laws(space in granule_space(4)) {
        if let Ok(ac) = AcAlgebra::new(build_quotient(&space).unwrap()) {
            prop_assert!(ac.groupoid_violations().is_empty());
            prop_assert!(ac.modal_violations().is_empty());
        }
    }
}
