//! Undirected simple graphs, DIMACS `.col` ingestion and conflict evaluation.
//!
//! Vertices are `0..n` inside the crate. Every textual format (DIMACS,
//! solution files, reports) uses 1-based vertex numbers.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColorAssignment;

/// Errors raised while reading a DIMACS `.col` file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no `p edge N M` line found")]
    MissingProblemLine,
    #[error("line {line}: duplicate `p` line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: `e` line before the `p` line")]
    EdgeBeforeProblemLine { line: usize },
    #[error("line {line}: vertex {vertex} outside 1..{n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: expected an integer, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Errors raised by graph evaluation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("assignment covers {found} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("best known value {best_known} outside 1..={n}")]
    BestKnownOutOfRange { best_known: u32, n: usize },
    #[error("edge ({u}, {v}) is invalid for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted `(u, v)` pairs with `u < v`, 0-based.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    declared_edges: Option<usize>,
    duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph from 0-based edges. Duplicates (in either orientation)
    /// are collapsed; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(GraphError::InvalidEdge { u, v, n });
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(Self::assemble(n, list, None))
    }

    fn assemble(n: usize, mut edges: Vec<(usize, usize)>, declared: Option<usize>) -> Self {
        let raw = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            duplicate_edges: raw - edges.len(),
            edges,
            adjacency,
            declared_edges: declared,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted 0-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edge count announced by the `p` line, when the graph came from DIMACS text.
    pub fn declared_edges(&self) -> Option<usize> {
        self.declared_edges
    }

    /// Number of edge lines dropped as duplicates while parsing.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicate_edges
    }

    /// Maximum vertex degree, 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of edges whose endpoints share a color.
    pub fn conflict_count(&self, a: &ColorAssignment) -> Result<usize, GraphError> {
        self.check_len(a)?;
        Ok(self.count_conflicts(a.colors()))
    }

    /// Vertices incident to at least one conflicting edge, ascending.
    pub fn conflict_vertices(&self, a: &ColorAssignment) -> Result<Vec<usize>, GraphError> {
        self.check_len(a)?;
        Ok(self.collect_conflict_vertices(a.colors()))
    }

    /// Conflicting edges, in edge order.
    pub fn conflicting_edges(
        &self,
        a: &ColorAssignment,
    ) -> Result<Vec<(usize, usize)>, GraphError> {
        self.check_len(a)?;
        let colors = a.colors();
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| colors[u] == colors[v])
            .collect())
    }

    fn check_len(&self, a: &ColorAssignment) -> Result<(), GraphError> {
        if a.n() != self.n {
            return Err(GraphError::LengthMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        Ok(())
    }

    pub(crate) fn count_conflicts(&self, colors: &[u32]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| colors[u] == colors[v])
            .count()
    }

    pub(crate) fn collect_conflict_vertices(&self, colors: &[u32]) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.adjacency[v].iter().any(|&u| colors[u] == colors[v]))
            .collect()
    }

    /// Conflicts incident to `v` if it had color `c`.
    pub(crate) fn conflicts_at(&self, colors: &[u32], v: usize, c: u32) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|&&u| colors[u] == c)
            .count()
    }

    /// Serializes to DIMACS text with 1-based vertices.
    pub fn to_dimacs(&self, comment: Option<&str>) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 2));
        if let Some(comment) = comment {
            for line in comment.lines() {
                let _ = writeln!(out, "c {line}");
            }
        }
        let _ = writeln!(out, "p edge {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

/// Parses DIMACS `.col` text.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        let mut tokens = trimmed.split_whitespace();
        let Some(kind) = tokens.next() else {
            continue;
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateProblemLine { line });
                }
                let format = tokens.next().ok_or_else(|| ParseError::Malformed {
                    line,
                    message: "`p` line lacks a format".into(),
                })?;
                if format != "edge" && format != "col" {
                    return Err(ParseError::Malformed {
                        line,
                        message: format!("unsupported format `{format}`"),
                    });
                }
                let n = integer(tokens.next(), line)? as usize;
                let m = integer(tokens.next(), line)? as usize;
                trailing(tokens.next(), line)?;
                header = Some((n, m));
                edges.reserve(m);
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(ParseError::EdgeBeforeProblemLine { line });
                };
                let u = integer(tokens.next(), line)?;
                let v = integer(tokens.next(), line)?;
                trailing(tokens.next(), line)?;
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                let (u, v) = (u as usize - 1, v as usize - 1);
                edges.push((u.min(v), u.max(v)));
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("unknown line type `{other}`"),
                })
            }
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    Ok(Graph::assemble(n, edges, Some(m)))
}

/// Reads and parses a DIMACS file.
pub fn read_dimacs(path: &Path) -> Result<Graph, crate::Error> {
    let text = std::fs::read_to_string(path).map_err(|source| crate::Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dimacs(&text).map_err(|source| crate::Error::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn integer(token: Option<&str>, line: usize) -> Result<u64, ParseError> {
    let token = token.ok_or_else(|| ParseError::Malformed {
        line,
        message: "missing field".into(),
    })?;
    token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })
}

fn trailing(token: Option<&str>, line: usize) -> Result<(), ParseError> {
    match token {
        None => Ok(()),
        Some(extra) => Err(ParseError::Malformed {
            line,
            message: format!("unexpected trailing token `{extra}`"),
        }),
    }
}

/// Benchmark metadata attached to an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub best_known: Option<u32>,
}

impl InstanceMeta {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        m: usize,
        best_known: Option<u32>,
    ) -> Result<Self, GraphError> {
        if let Some(best_known) = best_known {
            if best_known == 0 || best_known as usize > n {
                return Err(GraphError::BestKnownOutOfRange { best_known, n });
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            m,
            best_known,
        })
    }

    /// Metadata for an unnamed graph without a known optimum.
    pub fn for_graph(name: impl Into<String>, g: &Graph) -> Self {
        Self {
            name: name.into(),
            n: g.n(),
            m: g.m(),
            best_known: None,
        }
    }
}
