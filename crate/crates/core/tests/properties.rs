mod common;

use common::*;
use lpa_core::aperiodicity::{aperiodic_index, is_aperiodic, verify_positive_representation};
use lpa_core::cycles::{cycles_on_subset, exitless_cycles, is_acyclic_equiv, total_cycles};
use lpa_core::ideals::{closure, composition_series, enumerate_lattice, generate_lattice, quotient_is_simple};
use lpa_core::matrix::adjacency;
use lpa_core::paths::p_k;
use lpa_core::talented::{expand_to_level, MonoidElement};
use lpa_core::{CycleSeq, Graph, Permutation, VertexSet};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn graph_strategy(max_n: usize, max_mult: u64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let entry = prop_oneof![2 => Just(0u64), 1 => 1..=max_mult];
        proptest::collection::vec(proptest::collection::vec(entry, n), n)
            .prop_map(|rows| Graph::from_adjacency(&rows).unwrap())
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Permutation)> {
    graph_strategy(max_n, 2).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, order)| (g, Permutation::new(order).unwrap()))
    })
}

fn rational_rank(rows: &Rows) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn opposite_is_an_involution(g in graph_strategy(6, 2)) {
        prop_assert_eq!(g.opposite().opposite().to_spec(), g.to_spec());
        prop_assert_eq!(adjacency(&g.opposite()), adjacency(&g).transpose());
        prop_assert_eq!(g.opposite().find_all_cycles().len(), g.find_all_cycles().len());
    }

    #[test]
    fn relabeling_matches_permuting((g, p) in with_permutation(6)) {
        let h = g.relabel(&p).unwrap();
        let pm = adjacency(&g).permute(&p).unwrap();
        prop_assert_eq!(&adjacency(&h), &pm);
        prop_assert_eq!(pm.norms().total, adjacency(&g).norms().total);
        prop_assert_eq!(pm.rank(), adjacency(&g).rank());
        prop_assert_eq!(total_cycles(&h, 12).unwrap().total, total_cycles(&g, 12).unwrap().total);
        for k in 0..5 {
            prop_assert_eq!(p_k(&h, k).unwrap(), p_k(&g, k).unwrap());
        }
    }

    #[test]
    fn rank_matches_rational_elimination(g in graph_strategy(6, 3)) {
        prop_assert_eq!(adjacency(&g).rank(), rational_rank(&rows_of(&g)));
    }

    #[test]
    fn closure_is_the_least_member_above(g in graph_strategy(6, 2), seed_bits in any::<u64>()) {
        let n = g.vertex_count();
        let rows = rows_of(&g);
        let seed = seed_bits & ((1u64 << n) - 1);
        let least = lattice_masks(&rows)
            .into_iter()
            .filter(|&m| m & seed == seed)
            .fold((1u64 << n) - 1, |acc, m| acc & m);
        prop_assert_eq!(closure(&g, &VertexSet::from_mask(n, seed)).mask(), least);
    }

    #[test]
    fn lattice_builders_agree(g in graph_strategy(6, 2)) {
        let a = enumerate_lattice(&g, 20).unwrap();
        let b = generate_lattice(&g, 20).unwrap();
        prop_assert_eq!(&a, &b);
        let mut masks: Vec<u64> = a.sets.iter().map(VertexSet::mask).collect();
        masks.sort_unstable();
        prop_assert_eq!(&masks, &lattice_masks(&rows_of(&g)));
        let series = composition_series(&g, 20).unwrap();
        prop_assert_eq!(series.length, longest_chain(&masks, g.vertex_count()));
        prop_assert!(series.nested_form_holds);
        for (lo, hi) in a.hasse {
            prop_assert!(quotient_is_simple(&g, &a.sets[lo], &a.sets[hi]).unwrap());
        }
    }

    #[test]
    fn simple_quotients_have_nothing_between(g in graph_strategy(5, 2)) {
        let masks = lattice_masks(&rows_of(&g));
        let n = g.vertex_count();
        for &a in &masks {
            for &b in &masks {
                if a & b != a {
                    continue;
                }
                let between = masks.iter().any(|&c| c != a && c != b && a & c == a && c & b == c);
                let simple = quotient_is_simple(&g, &VertexSet::from_mask(n, a), &VertexSet::from_mask(n, b)).unwrap();
                prop_assert_eq!(simple, a != b && !between);
            }
        }
    }

    #[test]
    fn subset_counts_match_enumeration(g in graph_strategy(5, 3)) {
        let n = g.vertex_count();
        let census = total_cycles(&g, 12).unwrap();
        let listed = g.find_all_cycles();
        prop_assert_eq!(&census.total, &BigUint::from(listed.len()));
        for mask in 1..1u64 << n {
            let beta = VertexSet::from_mask(n, mask);
            let by_set = listed.iter().filter(|c| c.vertex_set(&g) == beta).count();
            prop_assert_eq!(cycles_on_subset(&g, &beta).unwrap(), BigUint::from(by_set));
            prop_assert_eq!(census.count_for(beta.as_slice()), BigUint::from(by_set));
        }
    }

    #[test]
    fn acyclicity_conditions_agree(g in graph_strategy(6, 1)) {
        let report = is_acyclic_equiv(&g, 20, 12).unwrap();
        prop_assert!(report.consistent, "{:?}", report);
        prop_assert_eq!(report.acyclic, cycle_count(&rows_of(&g)) == 0);
    }

    #[test]
    fn exitless_cycles_match_exit_scan(g in graph_strategy(6, 1)) {
        let scan: Vec<CycleSeq> = g.find_all_cycles().into_iter().filter(|c| !c.has_exit(&g)).collect();
        prop_assert_eq!(exitless_cycles(&g), scan);
        prop_assert_eq!(g.is_comet(), {
            let all = g.find_all_cycles();
            all.len() == 1 && !all[0].has_exit(&g)
        });
    }

    #[test]
    fn expansion_commutes_with_shift(g in graph_strategy(5, 2), v in 0usize..5, s in -3i64..3, n in -4i64..4, extra in 0i64..4) {
        let v = v % g.vertex_count();
        let x = MonoidElement::generator(v, s);
        let level = s + extra;
        if let Ok(y) = expand_to_level(&g, &x, level) {
            prop_assert_eq!(y.shift(n), expand_to_level(&g, &x.shift(n), level + n).unwrap());
        }
    }

    #[test]
    fn expansion_is_additive(g in graph_strategy(5, 2), a in 0usize..5, b in 0usize..5, level in 0i64..4) {
        let n = g.vertex_count();
        let (x, y) = (MonoidElement::generator(a % n, 0), MonoidElement::generator(b % n, 0));
        let sum = expand_to_level(&g, &(x.clone() + y.clone()), level).unwrap();
        let parts = expand_to_level(&g, &x, level).unwrap() + expand_to_level(&g, &y, level).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn aperiodic_graphs_have_positive_representations(g in graph_strategy(5, 2)) {
        if g.is_strongly_connected() && is_aperiodic(&g).unwrap() {
            let k0 = aperiodic_index(&g).unwrap();
            prop_assert!(verify_positive_representation(&g, k0).unwrap());
            if k0 > 1 {
                prop_assert!(!verify_positive_representation(&g, k0 - 1).unwrap());
            }
        }
    }

    #[test]
    fn path_formula_without_single_exits(g in graph_strategy(4, 2), k in 2usize..6) {
        prop_assume!((0..g.vertex_count()).all(|v| g.out_degree(v) != 1));
        let b = lpa_core::paths::p_k_breakdown(&g, k).unwrap();
        prop_assert!(b.reductions.iter().all(|r| r.value.is_zero()));
        prop_assert_eq!(b.total, BigUint::from(monomial_count(&g, k)));
    }
}
