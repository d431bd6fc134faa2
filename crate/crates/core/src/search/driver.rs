use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{repair, ColorAssignment};
use crate::graph::{Graph, InstanceMeta};
use crate::quantum::{inherit, QuantumMatrix};
use crate::report::RunReport;
use crate::scalar::Scalar;

use super::{
    cuckoo_step, local_search_scored, perturbation, Archive, CqeaConfig, LocalSearchMode, Nest,
    SearchError,
};

/// Result of one inner-loop run at a fixed color count.
#[derive(Debug, Clone, PartialEq)]
pub struct KLevelOutcome<T> {
    pub k: usize,
    /// A conflict-free assignment was found.
    pub success: bool,
    pub best: ColorAssignment,
    /// Quantum matrix paired with `best`.
    pub best_q: QuantumMatrix<T>,
    pub best_fitness: usize,
    pub inner_iterations_used: usize,
    pub timed_out: bool,
}

/// Minimizes conflicts with `k` colors.
///
/// All nests start from the equal superposition except the first, which takes
/// the inherited pair when one is supplied. Generation 0 decodes and
/// evaluates the population, seeds the archive and improves it with the
/// archive-mode local search. Every later generation re-measures the quantum
/// population, applies population-mode local search, updates the archive, and
/// runs the cuckoo step and the perturbation.
pub fn run_inner<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &CqeaConfig<T>,
    inherited: Option<(ColorAssignment, QuantumMatrix<T>)>,
    rng: &mut R,
) -> KLevelOutcome<T> {
    run_inner_until(g, k, cfg, inherited, None, rng)
}

pub(crate) fn run_inner_until<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &CqeaConfig<T>,
    inherited: Option<(ColorAssignment, QuantumMatrix<T>)>,
    deadline: Option<Instant>,
    rng: &mut R,
) -> KLevelOutcome<T> {
    assert!(k >= 1, "color count must be at least 1");
    let n = g.n();
    let mut inherited = inherited;
    let mut nests: Vec<Nest<T>> = (0..cfg.pop_size)
        .map(|i| match inherited.take().filter(|_| i == 0) {
            Some((x, q)) => {
                debug_assert_eq!((x.k(), q.k()), (k, k));
                Nest::new(g, q, x)
            }
            None => {
                let q = QuantumMatrix::uniform(k, n);
                let x = repair(&q.measure(rng), rng);
                Nest::new(g, q, x)
            }
        })
        .collect();

    let mut archive = Archive::new(cfg.archive_capacity);
    for nest in &nests {
        archive.offer(&nest.x, &nest.q, nest.fitness);
    }
    improve_archive(g, &mut archive, cfg.limit, rng);

    let mut iterations = 0;
    let mut timed_out = false;
    while archive.best_fitness() != Some(0) && iterations < cfg.max_inner {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out = true;
            break;
        }
        iterations += 1;

        for nest in &mut nests {
            let x = repair(&nest.q.measure(rng), rng);
            let f = g.count_conflicts(x.colors());
            let (x, f) = local_search_scored(g, x, f, LocalSearchMode::Population, cfg.limit, rng);
            nest.set_x(g, x, f);
        }
        for nest in &nests {
            archive.offer(&nest.x, &nest.q, nest.fitness);
        }
        cuckoo_step(g, &mut nests, &mut archive, &cfg.levy, cfg.keep_better, rng);
        perturbation(g, &mut nests, &mut archive, rng);
    }

    let best = archive.best().expect("archive is seeded before the loop");
    KLevelOutcome {
        k,
        success: best.fitness == 0,
        best: best.x.clone(),
        best_q: best.q.clone(),
        best_fitness: best.fitness,
        inner_iterations_used: iterations,
        timed_out,
    }
}

fn improve_archive<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    archive: &mut Archive<T>,
    limit: usize,
    rng: &mut R,
) {
    for entry in archive.entries_mut() {
        let (x, f) = local_search_scored(
            g,
            entry.x.clone(),
            entry.fitness,
            LocalSearchMode::Archive,
            limit,
            rng,
        );
        entry.x = x;
        entry.fitness = f;
    }
    archive.refresh(g);
}

/// Runs the full search: start at `Δ(G) + 1` colors, and after every
/// successful level seed the next one by inheritance (which may drop several
/// unused colors at once). Stops on the first failing level, on the outer
/// budget, on the time limit, or once `target_k` is reached.
pub fn run_cqea<T: Scalar>(g: &Graph, cfg: &CqeaConfig<T>) -> Result<RunReport<T>, SearchError> {
    if g.n() == 0 {
        return Err(SearchError::EmptyGraph);
    }
    cfg.validate()?;
    let start = Instant::now();
    let deadline = cfg.time_limit().map(|limit| start + limit);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let initial_k = g.max_degree() + 1;
    let max_outer = cfg.max_outer.unwrap_or(initial_k);
    let mut k = initial_k;
    let mut inherited = None;
    let mut per_k_iterations = Vec::new();
    let mut success: Option<ColorAssignment> = None;
    let mut last_failure: Option<(ColorAssignment, usize)> = None;

    for _gen in 0..max_outer {
        let outcome = run_inner_until(g, k, cfg, inherited.take(), deadline, &mut rng);
        per_k_iterations.push((k, outcome.inner_iterations_used));
        if !outcome.success {
            last_failure = Some((outcome.best, outcome.best_fitness));
            break;
        }
        // Never trust the search state for the witness.
        assert_eq!(g.count_conflicts(outcome.best.colors()), 0);
        success = Some(outcome.best.clone());

        if cfg
            .target_k
            .is_some_and(|t| outcome.best.colors_used() <= t)
            || k == 1
        {
            break;
        }
        let next = inherit(&outcome.best, &outcome.best_q)?;
        k = next.k();
        inherited = Some(next.into_parts(&mut rng));
    }

    let (witness, conflicts) = match success {
        Some(witness) => (compact(&witness), 0),
        None => last_failure.expect("at least one level ran"),
    };
    debug_assert_eq!(conflicts, g.count_conflicts(witness.colors()));
    Ok(RunReport {
        instance: InstanceMeta::for_graph("graph", g),
        config: cfg.clone(),
        colors_found: witness.k(),
        conflicts,
        per_k_iterations,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        witness,
    })
}

/// Relabels colors so that exactly the used ones remain, preserving order.
fn compact(a: &ColorAssignment) -> ColorAssignment {
    let mut remap = vec![u32::MAX; a.k()];
    let mut next = 0;
    for (c, used) in a.class_sizes().iter().map(|&s| s > 0).enumerate() {
        if used {
            remap[c] = next;
            next += 1;
        }
    }
    let colors = a.colors().iter().map(|&c| remap[c as usize]).collect();
    ColorAssignment::from_raw_parts(colors, next as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_drops_unused_colors() {
        let a = ColorAssignment::from_one_based(&[4, 2, 4], 5).unwrap();
        let c = compact(&a);
        assert_eq!(c.k(), 2);
        assert_eq!(c.colors(), &[1, 0, 1]);
    }

    #[test]
    fn edgeless_graph_succeeds_immediately() {
        let g = Graph::from_edges(4, []).unwrap();
        let cfg = CqeaConfig::<f64>::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = run_inner(&g, 1, &cfg, None, &mut rng);
        assert!(out.success);
        assert_eq!(out.inner_iterations_used, 0);
    }

    #[test]
    fn single_vertex_needs_one_color() {
        let g = Graph::from_edges(1, []).unwrap();
        let report = run_cqea(&g, &CqeaConfig::<f64>::default()).unwrap();
        assert_eq!(report.colors_found, 1);
        assert_eq!(report.conflicts, 0);
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = Graph::from_edges(0, []).unwrap();
        assert_eq!(
            run_cqea(&g, &CqeaConfig::<f64>::default()).unwrap_err(),
            SearchError::EmptyGraph
        );
    }
}
