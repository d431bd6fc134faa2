//! Independent reference colorings: exact chromatic numbers for small graphs
//! and the classical greedy and DSATUR upper bounds.

use thiserror::Error;

use crate::coloring::ColorAssignment;
use crate::graph::Graph;

/// Node budget used when the caller has no preference.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// Certified chromatic number with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub chromatic: usize,
    /// Proper coloring using exactly `chromatic` colors.
    pub witness: ColorAssignment,
    pub nodes_explored: u64,
}

/// Branch-and-bound backtracking. Vertices are colored in descending degree
/// order; a vertex may only open one color beyond the largest used so far.
pub fn exact_chromatic(g: &Graph, budget: u64) -> Result<ExactResult, OracleError> {
    let n = g.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    let start = dsatur_bound(g);
    let mut search = Exact {
        g,
        order: degree_order(g),
        colors: vec![u32::MAX; n],
        best: start.colors().to_vec(),
        upper: start.k(),
        nodes: 0,
        budget,
    };
    search.descend(0, 0)?;
    Ok(ExactResult {
        chromatic: search.upper,
        witness: ColorAssignment::new(search.best, search.upper).expect("colors below upper"),
        nodes_explored: search.nodes,
    })
}

struct Exact<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<u32>,
    best: Vec<u32>,
    upper: usize,
    nodes: u64,
    budget: u64,
}

impl Exact<'_> {
    fn descend(&mut self, pos: usize, used: usize) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if pos == self.order.len() {
            self.upper = used;
            self.best.clone_from(&self.colors);
            return Ok(());
        }
        let v = self.order[pos];
        // Only colorings with fewer than `upper` colors are interesting, and
        // `upper` shrinks whenever a deeper call succeeds.
        let mut c = 0;
        while c < (used + 1).min(self.upper - 1) {
            if !self
                .g
                .neighbors(v)
                .iter()
                .any(|&u| self.colors[u] == c as u32)
            {
                self.colors[v] = c as u32;
                self.descend(pos + 1, used.max(c + 1))?;
                self.colors[v] = u32::MAX;
            }
            c += 1;
        }
        Ok(())
    }
}

fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Colors vertices in `order`, each with the smallest color absent from its
/// already-colored neighbors.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> ColorAssignment {
    assert_eq!(
        order.len(),
        g.n(),
        "order must be a permutation of the vertices"
    );
    let mut colors = vec![u32::MAX; g.n()];
    let mut taken = vec![usize::MAX; g.max_degree() + 2];
    for &v in order {
        for &u in g.neighbors(v) {
            if colors[u] != u32::MAX {
                taken[colors[u] as usize] = v;
            }
        }
        colors[v] = (0..).find(|&c| taken[c] != v).expect("a free color exists") as u32;
    }
    let k = colors.iter().max().map_or(1, |&c| c as usize + 1);
    ColorAssignment::new(colors, k).expect("greedy colors are below k")
}

/// DSATUR: repeatedly color the uncolored vertex with the most distinct
/// neighbor colors, ties broken by degree and then by lowest index.
pub fn dsatur_bound(g: &Graph) -> ColorAssignment {
    let n = g.n();
    let cap = g.max_degree() + 2;
    let mut colors = vec![u32::MAX; n];
    // Per-vertex flags of neighbor colors seen so far.
    let mut seen = vec![vec![false; cap]; n];
    let mut saturation = vec![0usize; n];

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == u32::MAX)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..cap)
            .find(|&c| !seen[v][c])
            .expect("a free color exists");
        colors[v] = c as u32;
        for &u in g.neighbors(v) {
            if !seen[u][c] {
                seen[u][c] = true;
                saturation[u] += 1;
            }
        }
    }
    let k = colors.iter().max().map_or(1, |&c| c as usize + 1);
    ColorAssignment::new(colors, k).expect("dsatur colors are below k")
}
