mod common;

use common::{adjacency, adjacency_from_pairs, floyd_warshall, random_edges, random_graph, restricted_edges, INF};
use netsample::graph::{bfs_distances, connected_components, Graph, NodeSet, UNREACHABLE};
use proptest::prelude::*;

fn raw_pairs() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0u64..25, 0u64..25), 0..80)
}

proptest! {
    #[test]
    fn built_graphs_are_simple(pairs in raw_pairs()) {
        let g = Graph::from_edges(&pairs);
        let mut degree_sum = 0;
        for v in g.nodes() {
            let nbrs = g.neighbors(v);
            prop_assert!(!nbrs.contains(&v));
            prop_assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
            for &w in nbrs {
                prop_assert!(g.neighbors(w).contains(&v));
            }
            degree_sum += nbrs.len();
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert!(g.labels().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn build_matches_dense_oracle(pairs in raw_pairs()) {
        let g = Graph::from_edges(&pairs);
        let oracle = adjacency_from_pairs(g.labels(), &pairs);
        prop_assert_eq!(adjacency(&g), oracle);
        // Every label with a non-loop edge is present, and only those.
        let mut expected: Vec<u64> = pairs.iter().filter(|(u, v)| u != v).flat_map(|&(u, v)| [u, v]).collect();
        expected.sort_unstable();
        expected.dedup();
        prop_assert_eq!(g.labels(), expected.as_slice());
    }

    #[test]
    fn induced_subgraph_is_idempotent(pairs in raw_pairs(), mask in prop::collection::vec(any::<bool>(), 25)) {
        let g = Graph::from_edges(&pairs);
        let ids: Vec<usize> = g.nodes().filter(|&v| mask[v]).collect();
        let sub = g.induced_subgraph(&NodeSet::new(&g, ids).unwrap());
        let again = sub.induced_subgraph(&NodeSet::all(&sub));
        prop_assert_eq!(again.labels(), sub.labels());
        prop_assert_eq!(again.labeled_edges(), sub.labeled_edges());
    }

    #[test]
    fn components_are_consistent(pairs in raw_pairs()) {
        let g = Graph::from_edges(&pairs);
        let parts = connected_components(&g);
        prop_assert_eq!(parts.sizes().iter().sum::<usize>(), g.node_count());
        prop_assert!(parts.sizes().windows(2).all(|w| w[0] >= w[1]));
        for &(u, v) in g.edges() {
            prop_assert_eq!(parts.component_of(u), parts.component_of(v));
        }
    }

    #[test]
    fn bfs_neighbors_differ_by_at_most_one(pairs in raw_pairs(), source in 0usize..25) {
        let g = Graph::from_edges(&pairs);
        prop_assume!(!g.is_empty());
        let dist = bfs_distances(&g, source % g.node_count());
        for &(u, v) in g.edges() {
            if dist[u] == UNREACHABLE {
                prop_assert_eq!(dist[v], UNREACHABLE);
            } else {
                prop_assert!(dist[u].abs_diff(dist[v]) <= 1);
            }
        }
    }
}

#[test]
fn induced_subgraph_matches_matrix_restriction() {
    for seed in 0..200 {
        let g = random_graph(20, 45, seed);
        let a = adjacency(&g);
        let keep = netsample::sampling::sample_uns(&g, 8, seed).unwrap().nodes;
        let sub = g.induced_subgraph(&keep);
        assert_eq!(sub.node_count(), 8);
        assert_eq!(sub.labeled_edges(), restricted_edges(&a, g.labels(), keep.as_slice()));
    }
}

#[test]
fn components_match_transitive_closure() {
    for seed in 0..100 {
        let g = random_graph(30, 20, seed);
        let reach = floyd_warshall(&adjacency(&g));
        let parts = connected_components(&g);
        for u in g.nodes() {
            for v in g.nodes() {
                let same = parts.component_of(u) == parts.component_of(v);
                assert_eq!(same, reach[u][v] != INF, "seed {seed} pair ({u},{v})");
            }
        }
        // Descending sizes with the smallest-member tie-break.
        let firsts: Vec<usize> = (0..parts.count()).map(|c| parts.members(c)[0]).collect();
        for c in 1..parts.count() {
            let (a, b) = (parts.sizes()[c - 1], parts.sizes()[c]);
            assert!(a > b || (a == b && firsts[c - 1] < firsts[c]));
        }
    }
}

#[test]
fn bfs_matches_floyd_warshall() {
    for seed in 0..50 {
        let g = random_graph(25, 30, seed);
        let d = floyd_warshall(&adjacency(&g));
        for s in g.nodes() {
            let got = bfs_distances(&g, s);
            for v in g.nodes() {
                let want = if d[s][v] == INF { UNREACHABLE } else { d[s][v] };
                assert_eq!(got[v], want);
            }
        }
    }
}

#[test]
fn reversed_and_duplicate_pairs_merge() {
    let pairs = random_edges(15, 60, 9);
    let mut doubled = pairs.clone();
    doubled.extend(pairs.iter().map(|&(u, v)| (v, u)));
    assert_eq!(Graph::from_edges(&pairs), Graph::from_edges(&doubled));
}
