//! Per-run reports and multi-run statistics.

use serde::{Deserialize, Serialize};

use crate::coloring::ColorAssignment;
use crate::graph::{Graph, GraphError, InstanceMeta};
use crate::search::CqeaConfig;

/// Outcome of one complete solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport<T> {
    pub instance: InstanceMeta,
    pub config: CqeaConfig<T>,
    /// Colors used by the witness.
    pub colors_found: usize,
    /// Conflicts of the witness; 0 unless even the first level failed.
    pub conflicts: usize,
    /// `(k, inner iterations)` for every level attempted, in order.
    pub per_k_iterations: Vec<(usize, usize)>,
    pub wall_ms: f64,
    pub witness: ColorAssignment,
}

impl<T> RunReport<T> {
    pub fn total_inner_iterations(&self) -> usize {
        self.per_k_iterations.iter().map(|&(_, it)| it).sum()
    }

    pub fn is_proper(&self) -> bool {
        self.conflicts == 0
    }

    /// Recomputes `conflicts` from the witness.
    pub fn reverify(&mut self, g: &Graph) -> Result<(), GraphError> {
        self.conflicts = g.conflict_count(&self.witness)?;
        Ok(())
    }

    /// Proper and within the best known color count, when there is one.
    pub fn reached_best_known(&self) -> bool {
        self.is_proper()
            && self
                .instance
                .best_known
                .is_none_or(|b| self.colors_found <= b as usize)
    }
}

/// Statistics over repeated runs on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub runs: usize,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    /// Population standard deviation of `colors_found`.
    pub std: f64,
    pub mean_iterations: f64,
    /// Runs that reached the best known value (or any proper coloring when
    /// no best known value is recorded).
    pub success_count: usize,
}

impl AggregateStats {
    /// `None` for an empty slice.
    pub fn from_reports<T>(reports: &[RunReport<T>]) -> Option<Self> {
        if reports.is_empty() {
            return None;
        }
        let colors: Vec<usize> = reports.iter().map(|r| r.colors_found).collect();
        let runs = reports.len();
        let mean = colors.iter().sum::<usize>() as f64 / runs as f64;
        let var = colors
            .iter()
            .map(|&c| (c as f64 - mean).powi(2))
            .sum::<f64>()
            / runs as f64;
        let mean_iterations = reports
            .iter()
            .map(|r| r.total_inner_iterations() as f64)
            .sum::<f64>()
            / runs as f64;
        Some(Self {
            runs,
            min: *colors.iter().min().expect("nonempty"),
            max: *colors.iter().max().expect("nonempty"),
            mean,
            std: var.sqrt(),
            mean_iterations,
            success_count: reports.iter().filter(|r| r.reached_best_known()).count(),
        })
    }
}
