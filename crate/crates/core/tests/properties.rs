use std::collections::BTreeSet;

use glcs_core::oracle::{gen_random_graph, maximal_path_strings, oracle_seq_ic, random_dag};
use glcs_core::{
    atomize, build_intersection_index, condense, lcs_dag, seq_ic_lcs_cyclic, seq_ic_lcs_dag, topo_sort, unroll_bounded,
    AtomicGraph, ExtLen, SeqIcCyclic, SeqIcDag,
};
use proptest::prelude::*;

fn is_subsequence(needle: &str, hay: &str) -> bool {
    let mut it = hay.chars();
    needle.chars().all(|c| it.any(|h| h == c))
}

fn paths(g: &AtomicGraph) -> BTreeSet<String> {
    let set = maximal_path_strings(g, 5000, 64);
    assert!(!set.truncated);
    set.strings
}

/// Whether `s` spells some walk of `g`.
fn spells_walk(g: &AtomicGraph, s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return true };
    let mut current: BTreeSet<usize> = (0..g.len()).filter(|&v| g.label(v) == first).collect();
    for c in chars {
        current = current
            .iter()
            .flat_map(|&u| g.out_edges(u).iter().copied())
            .filter(|&v| g.label(v) == c)
            .collect();
    }
    !current.is_empty()
}

fn dag_strategy() -> impl Strategy<Value = AtomicGraph> {
    (any::<u64>(), 1usize..7)
        .prop_flat_map(|(seed, n)| (0..=(n * (n - 1) / 2).min(8)).prop_map(move |e| random_dag(seed, n, e, 3)))
}

fn any_graph_strategy() -> impl Strategy<Value = AtomicGraph> {
    (any::<u64>(), 1usize..5).prop_flat_map(|(seed, n)| {
        (0..=(n * n).min(6)).prop_map(move |e| atomize(&gen_random_graph(seed, n, e, 3, false).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witness_is_a_valid_solution(g1 in dag_strategy(), g2 in dag_strategy(), g3 in dag_strategy()) {
        let solved = SeqIcDag::compute(&g1, &g2, &g3).unwrap();
        match (solved.length(), solved.witness()) {
            (ExtLen::Finite(n), Some(w)) => {
                prop_assert_eq!(w.chars().count() as u64, n);
                prop_assert!(paths(&g1).iter().any(|s| is_subsequence(&w, s)));
                prop_assert!(paths(&g2).iter().any(|s| is_subsequence(&w, s)));
                prop_assert!(paths(&g3).iter().any(|p| is_subsequence(p, &w)));
            }
            (ExtLen::NegInf, None) => {}
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn bounded_by_plain_lcs(g1 in dag_strategy(), g2 in dag_strategy(), g3 in dag_strategy()) {
        let constrained = seq_ic_lcs_dag(&g1, &g2, &g3).unwrap();
        prop_assert!(constrained <= ExtLen::Finite(lcs_dag(&g1, &g2).unwrap()));
    }

    #[test]
    fn adding_a_target_edge_never_decreases(g1 in dag_strategy(), g2 in dag_strategy(), g3 in dag_strategy(), pick in any::<usize>()) {
        let order = topo_sort(&g1).unwrap();
        let missing: Vec<(usize, usize)> = (0..g1.len())
            .flat_map(|a| (a + 1..g1.len()).map(move |b| (a, b)))
            .map(|(a, b)| (order.order()[a], order.order()[b]))
            .filter(|&(u, v)| !g1.out_edges(u).contains(&v))
            .collect();
        prop_assume!(!missing.is_empty());
        let mut edges: Vec<_> = g1.edges().collect();
        edges.push(missing[pick % missing.len()]);
        let grown = AtomicGraph::new(g1.labels().to_vec(), &edges).unwrap();
        prop_assert!(seq_ic_lcs_dag(&grown, &g2, &g3).unwrap() >= seq_ic_lcs_dag(&g1, &g2, &g3).unwrap());
        prop_assert_eq!(seq_ic_lcs_dag(&grown, &g2, &g3).unwrap(), oracle_seq_ic(&grown, &g2, &g3).unwrap());
    }

    #[test]
    fn cyclic_engine_is_symmetric_in_targets(g1 in any_graph_strategy(), g2 in any_graph_strategy(), g3 in dag_strategy()) {
        prop_assert_eq!(seq_ic_lcs_cyclic(&g1, &g2, &g3).unwrap(), seq_ic_lcs_cyclic(&g2, &g1, &g3).unwrap());
    }

    #[test]
    fn base_layer_infinity_spreads_from_cyclic_matches(g1 in any_graph_strategy(), g2 in any_graph_strategy()) {
        let solved = SeqIcCyclic::compute(&g1, &g2, &AtomicGraph::path("a")).unwrap();
        let (h1, h2) = solved.condensed();
        let (n1, n2) = (h1.len(), h2.len());
        let index = build_intersection_index(h1, h2);
        let seed = |i: usize, j: usize| {
            h1.component(i).is_cyclic && h2.component(j).is_cyclic && index.matches(i, j)
        };
        // pairs reachable from a cyclic match along edge pairs, or one side
        let mut reached = vec![vec![false; n2]; n1];
        let mut stack: Vec<(usize, usize)> =
            (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j))).filter(|&(i, j)| seed(i, j)).collect();
        while let Some((i, j)) = stack.pop() {
            if std::mem::replace(&mut reached[i][j], true) {
                continue;
            }
            let next = h1.out_edges(i).iter().flat_map(|&x| h2.out_edges(j).iter().map(move |&y| (x, y)));
            stack.extend(next.chain(h1.out_edges(i).iter().map(|&x| (x, j))).chain(h2.out_edges(j).iter().map(|&y| (i, y))));
        }
        for ri in 0..n1 {
            for rj in 0..n2 {
                let (i, j) = solved.components_at(ri, rj);
                let value = solved.table().get(ri, rj, 0);
                prop_assert_eq!(value == ExtLen::PosInf, reached[i][j], "cell ({}, {}) = {}", i, j, value);
            }
        }
    }

    #[test]
    fn intersection_index_matches_naive(g1 in any_graph_strategy(), g2 in any_graph_strategy()) {
        let (h1, h2) = (condense(&g1), condense(&g2));
        let index = build_intersection_index(&h1, &h2);
        for i in 0..h1.len() {
            for j in 0..h2.len() {
                let naive: Vec<char> =
                    h1.component(i).label_set.iter().copied().filter(|c| h2.component(j).contains_label(*c)).collect();
                prop_assert_eq!(index.shared(i, j), naive.as_slice());
                prop_assert_eq!(index.matches(i, j), !naive.is_empty());
            }
        }
    }

    #[test]
    fn unrolled_paths_are_walks(g in any_graph_strategy(), times in 0usize..3) {
        let unrolled = unroll_bounded(&g, times);
        prop_assert!(unrolled.is_acyclic());
        prop_assert_eq!(unrolled.len(), g.len() * (times + 1));
        for s in paths(&unrolled) {
            prop_assert!(spells_walk(&g, &s), "{} is not a walk", s);
        }
    }
}
