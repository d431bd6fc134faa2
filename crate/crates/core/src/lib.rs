//! Graph coloring with a cuckoo quantum evolutionary algorithm.
//!
//! A population of quantum amplitude matrices is measured into color
//! assignments, improved by local search, moved by Lévy flights and random
//! walks, and perturbed around conflicting vertices. An outer loop lowers the
//! number of colors after every success, seeding each level from the previous
//! winner.
//!
//! The amplitude-space code is generic over [`Scalar`] (`f32` or `f64`);
//! the `*F64` / `*F32` aliases below fix the precision.

use std::path::PathBuf;

use thiserror::Error;

pub mod bench;
pub mod coloring;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod quantum;
pub mod report;
pub mod scalar;
pub mod search;

pub use coloring::{
    alternative_colors, parse_solution, repair, write_solution, ColorAssignment, RawBinaryMatrix,
    Solution,
};
pub use graph::{parse_dimacs, read_dimacs, Graph, InstanceMeta};
pub use oracle::{dsatur_bound, exact_chromatic, greedy_coloring, ExactResult};
pub use quantum::{inherit, Inherited, LevyParams, LevySampler, QuantumMatrix};
pub use report::{AggregateStats, RunReport};
pub use scalar::Scalar;
pub use search::{
    cuckoo_step, local_search, perturbation, run_cqea, run_inner, Archive, CqeaConfig,
    KLevelOutcome, LocalSearchMode, Nest,
};

pub type QuantumMatrixF64 = QuantumMatrix<f64>;
pub type QuantumMatrixF32 = QuantumMatrix<f32>;
pub type LevyParamsF64 = LevyParams<f64>;
pub type LevyParamsF32 = LevyParams<f32>;
pub type CqeaConfigF64 = CqeaConfig<f64>;
pub type CqeaConfigF32 = CqeaConfig<f32>;
pub type NestF64 = Nest<f64>;
pub type NestF32 = Nest<f32>;
pub type ArchiveF64 = Archive<f64>;
pub type ArchiveF32 = Archive<f32>;
pub type RunReportF64 = RunReport<f64>;
pub type RunReportF32 = RunReport<f32>;

/// Top-level error for file-facing operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: graph::ParseError,
    },
    #[error("{}: {source}", path.display())]
    Solution {
        path: PathBuf,
        #[source]
        source: coloring::SolutionError,
    },
    #[error(transparent)]
    Search(#[from] search::SearchError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
