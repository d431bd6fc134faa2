//! Multi-run benchmark harness, CSV/JSON output and solution verification.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::Solution;
use crate::graph::{Graph, InstanceMeta};
use crate::instances::{manifest_entry, ManifestEntry};
use crate::report::{AggregateStats, RunReport};
use crate::scalar::Scalar;
use crate::search::{default_pop_size, run_cqea, CqeaConfig};
use crate::Error;

/// Fixed CSV header of the per-run table.
pub const CSV_HEADER: [&str; 11] = [
    "instance",
    "n",
    "m",
    "best_known",
    "pop_size",
    "run",
    "seed",
    "colors",
    "conflicts",
    "total_inner_iterations",
    "wall_ms",
];

/// Population size for an instance: explicit override, then the manifest
/// value, then the size-based default.
pub fn pop_size_for(meta: &InstanceMeta, explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            manifest_entry(&meta.name)
                .filter(|e| e.n == meta.n)
                .map(|e| e.pop_size)
        })
        .unwrap_or_else(|| default_pop_size(meta.n))
}

/// Runs one solve and stamps the report with the instance metadata. The
/// conflict count is recomputed from the witness.
pub fn solve<T: Scalar>(
    g: &Graph,
    meta: &InstanceMeta,
    cfg: &CqeaConfig<T>,
) -> Result<RunReport<T>, Error> {
    let mut report = run_cqea(g, cfg)?;
    report.instance = meta.clone();
    report.reverify(g)?;
    Ok(report)
}

/// `runs` independent solves with seeds `seed_base + r`, executed on up to
/// `jobs` threads. Reports come back in run order.
pub fn run_campaign<T: Scalar>(
    g: &Graph,
    meta: &InstanceMeta,
    template: &CqeaConfig<T>,
    runs: usize,
    seed_base: u64,
    jobs: usize,
) -> Result<Vec<RunReport<T>>, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|r| {
                let cfg = CqeaConfig {
                    seed: seed_base.wrapping_add(r as u64),
                    ..template.clone()
                };
                solve(g, meta, &cfg)
            })
            .collect()
    })
}

/// Summary of one instance in a benchmark campaign.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary<T> {
    pub instance: InstanceMeta,
    pub stats: AggregateStats,
    pub published: Option<ManifestEntry>,
    pub runs: Vec<RunReport<T>>,
}

impl<T> InstanceSummary<T> {
    pub fn new(runs: Vec<RunReport<T>>) -> Option<Self> {
        let stats = AggregateStats::from_reports(&runs)?;
        let instance = runs[0].instance.clone();
        let published = manifest_entry(&instance.name)
            .filter(|e| e.n == instance.n)
            .copied();
        Some(Self {
            instance,
            stats,
            published,
            runs,
        })
    }
}

/// An instance that could not be loaded.
#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub instance: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchSummary<T> {
    pub seed_base: u64,
    pub runs_per_instance: usize,
    pub instances: Vec<InstanceSummary<T>>,
    pub skipped: Vec<Skipped>,
}

/// Writes the per-run CSV table.
pub fn write_csv<T, W: Write>(out: W, summaries: &[InstanceSummary<T>]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for s in summaries {
        for (run, r) in s.runs.iter().enumerate() {
            w.write_record([
                r.instance.name.clone(),
                r.instance.n.to_string(),
                r.instance.m.to_string(),
                r.instance
                    .best_known
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
                r.config.pop_size.to_string(),
                run.to_string(),
                r.config.seed.to_string(),
                r.colors_found.to_string(),
                r.conflicts.to_string(),
                r.total_inner_iterations().to_string(),
                format!("{:.3}", r.wall_ms),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Human-readable table with the same columns as the published results.
pub fn format_summary_table<T>(summaries: &[InstanceSummary<T>]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:>5} {:>6} {:>5} {:>4} | {:>4} {:>4} {:>6} {:>6} | {:>8} {:>7} | {:>9}",
        "instance",
        "|V|",
        "|E|",
        "best",
        "pop",
        "min",
        "max",
        "mean",
        "std",
        "iter",
        "success",
        "published"
    );
    for s in summaries {
        let st = &s.stats;
        let best = s.instance.best_known.map_or("-".into(), |b| b.to_string());
        let published = s.published.map_or("-".into(), |p| {
            format!("{}/{}", p.published_min, p.published_max)
        });
        let _ = writeln!(
            out,
            "{:<12} {:>5} {:>6} {:>5} {:>4} | {:>4} {:>4} {:>6.2} {:>6.3} | {:>8.1} {:>3}/{:<3} | {:>9}",
            s.instance.name,
            s.instance.n,
            s.instance.m,
            best,
            s.runs.first().map_or(0, |r| r.config.pop_size),
            st.min,
            st.max,
            st.mean,
            st.std,
            st.mean_iterations,
            st.success_count,
            st.runs,
            published
        );
    }
    out
}

/// Outcome of checking a solution file against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub proper: bool,
    /// Declared color count.
    pub k: usize,
    pub colors_used: usize,
    pub conflicts: usize,
    pub declared_conflicts: usize,
    /// 1-based conflicting edges, at most [`Verdict::EDGE_CAP`].
    pub conflicting_edges: Vec<(usize, usize)>,
}

impl Verdict {
    pub const EDGE_CAP: usize = 20;
}

pub fn verify(g: &Graph, solution: &Solution) -> Result<Verdict, Error> {
    let a = &solution.assignment;
    let edges = g.conflicting_edges(a)?;
    Ok(Verdict {
        proper: edges.is_empty(),
        k: a.k(),
        colors_used: a.colors_used(),
        conflicts: edges.len(),
        declared_conflicts: solution.declared_conflicts,
        conflicting_edges: edges
            .iter()
            .take(Verdict::EDGE_CAP)
            .map(|&(u, v)| (u + 1, v + 1))
            .collect(),
    })
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.proper {
            writeln!(f, "PROPER")?;
        } else {
            writeln!(f, "IMPROPER")?;
        }
        writeln!(
            f,
            "colors declared {} used {}; conflicts {} (declared {})",
            self.k, self.colors_used, self.conflicts, self.declared_conflicts
        )?;
        for (u, v) in &self.conflicting_edges {
            writeln!(f, "conflict {u} {v}")?;
        }
        if self.conflicts > self.conflicting_edges.len() {
            writeln!(
                f,
                "... {} more",
                self.conflicts - self.conflicting_edges.len()
            )?;
        }
        Ok(())
    }
}
