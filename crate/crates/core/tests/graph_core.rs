mod common;

use cqea::instances::{builtin, queen};
use cqea::{greedy_coloring, parse_dimacs, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const MYCIEL3: &str = "c Mycielski graph of order 3
p edge 11 20
e 1 2
e 1 4
e 1 7
e 1 9
e 2 3
e 2 6
e 2 8
e 3 5
e 3 7
e 3 10
e 4 5
e 4 6
e 4 10
e 5 8
e 5 9
e 6 11
e 7 11
e 8 11
e 9 11
e 10 11
";

fn raw_degrees(text: &str, n: usize) -> Vec<usize> {
    let mut deg = vec![0; n];
    for line in text.lines().filter(|l| l.starts_with("e ")) {
        for tok in line.split_whitespace().skip(1) {
            deg[tok.parse::<usize>().unwrap() - 1] += 1;
        }
    }
    deg
}

#[test]
fn myciel3_file_parses() {
    let g = parse_dimacs(MYCIEL3).unwrap();
    assert_eq!((g.n(), g.m()), (11, 20));
    let deg = raw_degrees(MYCIEL3, 11);
    assert_eq!(g.max_degree(), *deg.iter().max().unwrap());
    for v in 0..11 {
        assert_eq!(g.degree(v), deg[v]);
    }
}

#[test]
fn generated_myciel3_has_file_degree_sequence() {
    let mut a: Vec<usize> = raw_degrees(MYCIEL3, 11);
    let g = builtin("myciel3").unwrap();
    let mut b: Vec<usize> = (0..11).map(|v| g.degree(v)).collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn queen5_5_conflicts_match_matrix_scan() {
    let g = queen(5, 5);
    let adj = adjacency_matrix(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 1..=8 {
        let a = random_assignment(g.n(), k, &mut rng);
        assert_eq!(
            g.conflict_count(&a).unwrap(),
            matrix_conflicts(&adj, a.colors())
        );
    }
}

#[test]
fn queen6_6_conflict_vertices_match_matrix_scan() {
    let g = queen(6, 6);
    let adj = adjacency_matrix(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in [2, 5, 7, 9] {
        let a = random_assignment(g.n(), k, &mut rng);
        assert_eq!(
            g.conflict_vertices(&a).unwrap(),
            matrix_conflict_vertices(&adj, a.colors())
        );
    }
}

fn graph_and_colors() -> impl Strategy<Value = (Graph, Vec<u32>, usize)> {
    (1usize..=12, 1usize..=6).prop_flat_map(|(n, k)| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(0..k as u32, n),
        )
            .prop_map(move |(bits, colors)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                (Graph::from_edges(n, edges).unwrap(), colors, k)
            })
    })
}

proptest! {
    #[test]
    fn conflict_count_matches_matrix((g, colors, k) in graph_and_colors()) {
        let a = cqea::ColorAssignment::new(colors, k).unwrap();
        let adj = adjacency_matrix(&g);
        let f = g.conflict_count(&a).unwrap();
        prop_assert_eq!(f, matrix_conflicts(&adj, a.colors()));
        let c = g.conflict_vertices(&a).unwrap();
        prop_assert_eq!(c.is_empty(), f == 0);
        prop_assert_eq!(c, matrix_conflict_vertices(&adj, a.colors()));
    }

    #[test]
    fn dimacs_round_trip((g, _c, _k) in graph_and_colors()) {
        let back = parse_dimacs(&g.to_dimacs(Some("round trip"))).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn greedy_respects_degree_bound((g, _c, _k) in graph_and_colors(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = greedy_coloring(&g, &order);
        prop_assert_eq!(g.conflict_count(&a).unwrap(), 0);
        prop_assert!(a.colors_used() <= g.max_degree() + 1);
    }
}
