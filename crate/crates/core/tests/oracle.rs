mod common;

use cqea::instances::{builtin, mycielski, resolve};
use cqea::oracle::DEFAULT_BUDGET;
use cqea::{dsatur_bound, exact_chromatic, greedy_coloring, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

#[test]
fn cycles_and_cliques() {
    for n in 3..=11 {
        let expected = if n % 2 == 0 { 2 } else { 3 };
        assert_eq!(
            exact_chromatic(&cycle(n), DEFAULT_BUDGET)
                .unwrap()
                .chromatic,
            expected
        );
        if n % 2 == 0 {
            assert_eq!(dsatur_bound(&cycle(n)).colors_used(), 2);
        }
    }
    let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        use rand::seq::SliceRandom;
        let mut order: Vec<usize> = (0..5).collect();
        order.shuffle(&mut rng);
        let a = greedy_coloring(&k5, &order);
        assert_eq!(a.colors_used(), 5);
    }
    let edgeless = Graph::from_edges(4, []).unwrap();
    assert_eq!(
        greedy_coloring(&edgeless, &[0, 1, 2, 3]).colors(),
        &[0, 0, 0, 0]
    );
}

#[test]
fn myciel3_needs_four() {
    let r = exact_chromatic(&mycielski(3), DEFAULT_BUDGET).unwrap();
    assert_eq!(r.chromatic, 4);
    assert_eq!(mycielski(3).conflict_count(&r.witness).unwrap(), 0);
}

#[test]
fn exact_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..150 {
        let n = rng.random_range(1..=8);
        let g = random_graph(n, rng.random_range(0.1..0.9), &mut rng);
        let r = exact_chromatic(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.chromatic, brute_force_chromatic(&g));
        assert_eq!(r.witness.colors_used(), r.chromatic);
        assert_eq!(g.conflict_count(&r.witness).unwrap(), 0);
    }
}

#[test]
fn bound_chain_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let n = rng.random_range(1..=12);
        let g = random_graph(n, rng.random_range(0.1..0.9), &mut rng);
        let natural: Vec<usize> = (0..n).collect();
        let exact = exact_chromatic(&g, DEFAULT_BUDGET).unwrap().chromatic;
        let ds = dsatur_bound(&g);
        let gr = greedy_coloring(&g, &natural);
        assert_eq!(g.conflict_count(&ds).unwrap(), 0);
        assert_eq!(g.conflict_count(&gr).unwrap(), 0);
        assert!(exact <= ds.colors_used());
        assert!(ds.colors_used() <= gr.colors_used(), "{:?}", g.edges());
        assert!(gr.colors_used() <= g.max_degree() + 1);
    }
}

#[test]
fn bounds_on_benchmark_instances() {
    let dirs = instance_dirs();
    for name in [
        "myciel3", "myciel4", "myciel5", "queen5_5", "queen6_6", "miles250", "miles500",
    ] {
        let Ok((g, meta)) = resolve(name, &dirs) else {
            continue;
        };
        let natural: Vec<usize> = (0..g.n()).collect();
        let ds = dsatur_bound(&g);
        let gr = greedy_coloring(&g, &natural);
        assert_eq!(g.conflict_count(&ds).unwrap(), 0, "{name}");
        assert_eq!(g.conflict_count(&gr).unwrap(), 0, "{name}");
        assert!(gr.colors_used() <= g.max_degree() + 1, "{name}");
        assert!(
            ds.colors_used() as u32 >= meta.best_known.unwrap(),
            "{name}"
        );
    }
}

#[test]
fn dsatur_regression_values() {
    let dirs = instance_dirs();
    let pinned = [
        ("myciel3", 4),
        ("myciel4", 5),
        ("myciel5", 6),
        ("queen5_5", 5),
        ("queen6_6", 9),
        ("miles250", 8),
        ("miles500", 20),
    ];
    for (name, colors) in pinned {
        let Ok((g, _)) = resolve(name, &dirs) else {
            continue;
        };
        assert_eq!(dsatur_bound(&g).colors_used(), colors, "{name}");
    }
}

#[test]
fn budget_is_reported() {
    let g = builtin("queen6_6").unwrap();
    assert!(exact_chromatic(&g, 10).is_err());
}
