mod common;

use common::*;
use proptest::prelude::*;
use rmemoa::cost::CostVec;
use rmemoa::graph::Graph;
use rmemoa::oracle::oracle_pareto;

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8, 1usize..=3).prop_flat_map(|(n, m)| {
        let edge = (0..n as u32, 0..n as u32, prop::collection::vec(1u64..=6, m));
        prop::collection::vec(edge, 0..=24).prop_map(move |edges| {
            let mut g = Graph::new(n, m, 0, (n - 1) as u32).unwrap();
            for (u, v, c) in edges {
                g.add_edge(u, v, CostVec::from(c)).unwrap();
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn oracle_matches_simple_path_enumeration(g in small_graph()) {
        let oracle = oracle_pareto(&g).unwrap();
        prop_assert_eq!(to_vecs(&oracle.costs()), simple_path_front(&g));
        for (cost, path) in &oracle.witnesses {
            prop_assert!(g.path_attains(path, cost));
        }
    }
}

#[test]
fn frontier_sequences_match_naive_sets() {
    for seed in 0..5_000 {
        frontier_sequence(seed).unwrap();
    }
}

#[test]
fn pareto_filter_basics() {
    let costs = vec![vec![1, 5], vec![2, 2], vec![3, 2], vec![2, 2], vec![5, 1]];
    assert_eq!(pareto_filter(&costs), vec![vec![1, 5], vec![2, 2], vec![5, 1]]);
}
