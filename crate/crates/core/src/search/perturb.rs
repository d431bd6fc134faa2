use rand::Rng;

use crate::coloring::alternative_colors_into;
use crate::graph::Graph;
use crate::scalar::Scalar;

use super::{Archive, Nest};

/// Conflict-driven perturbation of the population and the archive.
///
/// With `C` the conflict vertices of the archive's best assignment:
/// the worse half of the nests (by fitness) get the columns of `C` reset to the
/// equal superposition, and in every archive entry each `v ∈ C` first has its
/// neighborhood consolidated onto the most frequent neighbor color (a neighbor
/// moves only if that color is free around it) and then, if `v` still
/// conflicts and has alternative colors, is moved to a random one of them.
/// No archive entry can get worse. Nests end up sorted by fitness.
pub fn perturbation<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    nests: &mut [Nest<T>],
    archive: &mut Archive<T>,
    rng: &mut R,
) {
    let Some(best) = archive.best() else {
        return;
    };
    let conflicted = g.collect_conflict_vertices(best.x.colors());
    if conflicted.is_empty() {
        return;
    }

    nests.sort_by_key(|nest| nest.fitness);
    let half = nests.len().div_ceil(2);
    for nest in &mut nests[half..] {
        nest.q
            .reset_columns_in_place(&conflicted)
            .expect("conflict vertices are valid columns");
    }

    let k = archive.best().map_or(1, |b| b.x.k());
    let mut freq = vec![0usize; k];
    let mut used = vec![false; k];
    let mut ac = Vec::with_capacity(k);
    for entry in archive.entries_mut() {
        let before = entry.fitness;
        let x = &mut entry.x;
        for &v in &conflicted {
            let neighbors = g.neighbors(v);
            if neighbors.is_empty() {
                continue;
            }
            freq.iter_mut().for_each(|f| *f = 0);
            for &u in neighbors {
                freq[x.colors()[u] as usize] += 1;
            }
            let target = (0..k)
                .max_by_key(|&c| (freq[c], std::cmp::Reverse(c)))
                .expect("k >= 1") as u32;
            for &u in neighbors {
                if x.colors()[u] != target && g.conflicts_at(x.colors(), u, target) == 0 {
                    x.set(u, target);
                }
            }

            if g.conflicts_at(x.colors(), v, x.colors()[v]) > 0 {
                alternative_colors_into(g, x.colors(), k, v, &mut used, &mut ac);
                if !ac.is_empty() {
                    let c = ac[rng.random_range(0..ac.len())];
                    x.set(v, c);
                }
            }
        }
        entry.fitness = g.count_conflicts(x.colors());
        debug_assert!(entry.fitness <= before);
    }
    archive.refresh(g);
}
