use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloring::{alternative_colors_into, ColorAssignment};
use crate::graph::Graph;

/// Color-selection rule of the local search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalSearchMode {
    /// Smallest alternative color; applied to the archive.
    Archive,
    /// Uniform random alternative color; applied to the population.
    Population,
}

/// Runs up to `limit` local-search passes and returns the improved assignment.
pub fn local_search<R: Rng + ?Sized>(
    g: &Graph,
    a: &ColorAssignment,
    mode: LocalSearchMode,
    limit: usize,
    rng: &mut R,
) -> ColorAssignment {
    let fitness = g.count_conflicts(a.colors());
    local_search_scored(g, a.clone(), fitness, mode, limit, rng).0
}

/// [`local_search`] on an owned assignment with a known fitness; returns the
/// result and its fitness.
///
/// A pass visits the vertices in random order and moves every vertex with a
/// nonempty alternative-color set (computed against the partially updated
/// candidate) to one of those colors. The candidate replaces the incumbent
/// only when it has strictly fewer conflicts. Passes chain from the incumbent
/// and stop early once it is conflict-free.
pub fn local_search_scored<R: Rng + ?Sized>(
    g: &Graph,
    mut x: ColorAssignment,
    mut fitness: usize,
    mode: LocalSearchMode,
    limit: usize,
    rng: &mut R,
) -> (ColorAssignment, usize) {
    debug_assert_eq!(fitness, g.count_conflicts(x.colors()));
    let k = x.k();
    let mut order: Vec<usize> = (0..g.n()).collect();
    let mut used = vec![false; k];
    let mut ac = Vec::with_capacity(k);

    for _ in 0..limit {
        if fitness == 0 {
            break;
        }
        order.shuffle(rng);
        let (y, fy) = pass(g, &x, fitness, &order, mode, &mut used, &mut ac, rng);
        if fy < fitness {
            x = y;
            fitness = fy;
        }
    }
    (x, fitness)
}

/// One traversal in the given vertex order; returns the candidate and its
/// fitness without applying the acceptance rule.
#[allow(clippy::too_many_arguments)]
fn pass<R: Rng + ?Sized>(
    g: &Graph,
    x: &ColorAssignment,
    fitness: usize,
    order: &[usize],
    mode: LocalSearchMode,
    used: &mut [bool],
    ac: &mut Vec<u32>,
    rng: &mut R,
) -> (ColorAssignment, usize) {
    let k = x.k();
    let mut y = x.clone();
    let mut fy = fitness;
    for &v in order {
        alternative_colors_into(g, y.colors(), k, v, used, ac);
        let c = match (mode, ac.len()) {
            (_, 0) => continue,
            (LocalSearchMode::Archive, _) | (LocalSearchMode::Population, 1) => ac[0],
            (LocalSearchMode::Population, len) => ac[rng.random_range(0..len)],
        };
        // `c` is free in the neighborhood, so every conflict at `v` disappears.
        fy -= g.conflicts_at(y.colors(), v, y.colors()[v]);
        y.set(v, c);
    }
    debug_assert_eq!(fy, g.count_conflicts(y.colors()));
    (y, fy)
}
