//! The cuckoo quantum evolutionary search.
//!
//! The outer loop ([`run_cqea`]) starts at `Δ(G) + 1` colors and walks the
//! color count down. Each level is handled by [`run_inner`], which evolves a
//! small population of quantum matrices with local search, cuckoo moves and a
//! conflict-driven perturbation until a conflict-free assignment appears or
//! the generation budget runs out.

mod archive;
mod cuckoo;
mod driver;
mod local;
mod perturb;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColorAssignment;
use crate::graph::Graph;
use crate::quantum::{LevyParams, QuantumError, QuantumMatrix};
use crate::scalar::Scalar;

pub use archive::{Archive, ArchiveEntry};
pub use cuckoo::cuckoo_step;
pub use driver::{run_cqea, run_inner, KLevelOutcome};
pub use local::{local_search, local_search_scored, LocalSearchMode};
pub use perturb::perturbation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Population size used when none is given: 10 for graphs with at most 40
/// vertices, 6 otherwise.
pub fn default_pop_size(n: usize) -> usize {
    if n <= 40 {
        10
    } else {
        6
    }
}

/// Solver configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CqeaConfig<T> {
    pub pop_size: usize,
    /// Generation cap of the inner loop at each color level.
    pub max_inner: usize,
    /// Outer-loop cap; `None` means `Δ(G) + 1`.
    pub max_outer: Option<usize>,
    /// Local-search passes per call.
    pub limit: usize,
    pub levy: LevyParams<T>,
    pub archive_capacity: usize,
    /// Stop once a proper coloring with at most this many colors is verified.
    pub target_k: Option<usize>,
    pub seed: u64,
    /// Ablation switch: when the Lévy offspring does not improve, keep the
    /// better of the nest and its random-walked offspring instead of replacing
    /// the nest unconditionally.
    pub keep_better: bool,
    /// Wall-clock budget for the whole run, in milliseconds.
    pub time_limit_ms: Option<u64>,
}

impl<T: Scalar> Default for CqeaConfig<T> {
    fn default() -> Self {
        Self {
            pop_size: 10,
            max_inner: 500,
            max_outer: None,
            limit: 5,
            levy: LevyParams::default(),
            archive_capacity: 1,
            target_k: None,
            seed: 0,
            keep_better: false,
            time_limit_ms: None,
        }
    }
}

impl<T: Scalar> CqeaConfig<T> {
    /// Defaults with the population size chosen for `g`.
    pub fn for_graph(g: &Graph) -> Self {
        Self {
            pop_size: default_pop_size(g.n()),
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let positive = [
            ("pop_size", self.pop_size),
            ("max_inner", self.max_inner),
            ("limit", self.limit),
            ("archive_capacity", self.archive_capacity),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(SearchError::InvalidConfig(format!(
                "{name} must be at least 1"
            )));
        }
        if self.max_outer == Some(0) {
            return Err(SearchError::InvalidConfig(
                "max_outer must be at least 1".into(),
            ));
        }
        if self.target_k == Some(0) {
            return Err(SearchError::InvalidConfig(
                "target_k must be at least 1".into(),
            ));
        }
        self.levy.validate()?;
        Ok(())
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.time_limit_ms.map(Duration::from_millis)
    }
}

/// One population member: a quantum matrix with its decoded assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Nest<T> {
    pub q: QuantumMatrix<T>,
    pub x: ColorAssignment,
    /// Always `conflict_count(g, x)`.
    pub fitness: usize,
}

impl<T: Scalar> Nest<T> {
    pub fn new(g: &Graph, q: QuantumMatrix<T>, x: ColorAssignment) -> Self {
        let fitness = g.count_conflicts(x.colors());
        Self { q, x, fitness }
    }

    pub(crate) fn set_x(&mut self, g: &Graph, x: ColorAssignment, fitness: usize) {
        debug_assert_eq!(fitness, g.count_conflicts(x.colors()));
        self.x = x;
        self.fitness = fitness;
    }
}
