#![allow(dead_code)]

use std::path::PathBuf;

use cqea::{ColorAssignment, Graph};
use rand::Rng;

/// Erdős–Rényi graph G(n, p).
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_assignment<R: Rng>(n: usize, k: usize, rng: &mut R) -> ColorAssignment {
    let colors = (0..n).map(|_| rng.random_range(0..k as u32)).collect();
    ColorAssignment::new(colors, k).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Conflict count by scanning the upper triangle of the adjacency matrix.
pub fn matrix_conflicts(adj: &[Vec<bool>], colors: &[u32]) -> usize {
    let n = adj.len();
    let mut f = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] && colors[i] == colors[j] {
                f += 1;
            }
        }
    }
    f
}

/// Endpoints of the conflicting pairs found by the matrix scan.
pub fn matrix_conflict_vertices(adj: &[Vec<bool>], colors: &[u32]) -> Vec<usize> {
    let n = adj.len();
    let mut hit = vec![false; n];
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] && colors[i] == colors[j] {
                hit[i] = true;
                hit[j] = true;
            }
        }
    }
    (0..n).filter(|&v| hit[v]).collect()
}

/// Chromatic number by trying every assignment with k colors, k = 1, 2, ...
pub fn brute_force_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = adjacency_matrix(g);
    for k in 1..=n {
        let mut colors = vec![0u32; n];
        loop {
            if matrix_conflicts(&adj, &colors) == 0 {
                return k;
            }
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if (colors[i] as usize) < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Instance directories: `CQEA_INSTANCE_DIR`, then the bundled `instances/`.
pub fn instance_dirs() -> Vec<PathBuf> {
    let mut dirs = cqea::instances::env_search_path();
    dirs.push(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances"));
    dirs
}
