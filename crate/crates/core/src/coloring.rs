//! Color assignments and their K×n binary matrix view.
//!
//! Colors are `0..k` in memory and `1..=k` in every textual format.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color count must be at least 1")]
    NoColors,
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: u64, k: usize },
    #[error("column {column} holds {ones} set bits, expected exactly one")]
    NotOneHot { column: usize, ones: usize },
}

/// Per-vertex colors in `0..k`. Serializes with 1-based colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "AssignmentRepr", try_from = "AssignmentRepr")]
pub struct ColorAssignment {
    colors: Vec<u32>,
    k: usize,
}

impl ColorAssignment {
    /// Builds an assignment from 0-based colors.
    pub fn new(colors: Vec<u32>, k: usize) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::NoColors);
        }
        if let Some((vertex, &c)) = colors.iter().enumerate().find(|(_, &c)| c as usize >= k) {
            return Err(ColoringError::ColorOutOfRange {
                vertex: vertex + 1,
                color: c as u64 + 1,
                k,
            });
        }
        Ok(Self { colors, k })
    }

    /// Builds an assignment from 1-based colors, as written in solution files.
    pub fn from_one_based(colors: &[u32], k: usize) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::NoColors);
        }
        let mut out = Vec::with_capacity(colors.len());
        for (vertex, &c) in colors.iter().enumerate() {
            if c == 0 || c as usize > k {
                return Err(ColoringError::ColorOutOfRange {
                    vertex: vertex + 1,
                    color: c as u64,
                    k,
                });
            }
            out.push(c - 1);
        }
        Ok(Self { colors: out, k })
    }

    pub(crate) fn from_raw_parts(colors: Vec<u32>, k: usize) -> Self {
        debug_assert!(k >= 1 && colors.iter().all(|&c| (c as usize) < k));
        Self { colors, k }
    }

    /// 0-based colors.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// 1-based color of vertex `v` (0-based).
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v] + 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Number of vertices carrying each color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        self.colors.iter().for_each(|&c| sizes[c as usize] += 1);
        sizes
    }

    pub(crate) fn set(&mut self, v: usize, c: u32) {
        debug_assert!((c as usize) < self.k);
        self.colors[v] = c;
    }

    /// The one-hot K×n matrix of this assignment.
    pub fn to_binary_matrix(&self) -> RawBinaryMatrix {
        let mut m = RawBinaryMatrix::zeros(self.k, self.n());
        for (j, &c) in self.colors.iter().enumerate() {
            m.set(c as usize, j, true);
        }
        m
    }

    /// Inverse of [`to_binary_matrix`](Self::to_binary_matrix); fails unless
    /// every column has exactly one set bit.
    pub fn from_binary_matrix(m: &RawBinaryMatrix) -> Result<Self, ColoringError> {
        if m.k() == 0 {
            return Err(ColoringError::NoColors);
        }
        let mut colors = Vec::with_capacity(m.n());
        for j in 0..m.n() {
            let mut ones = m.column_ones(j);
            match (ones.next(), ones.next()) {
                (Some(i), None) => colors.push(i as u32),
                _ => {
                    return Err(ColoringError::NotOneHot {
                        column: j + 1,
                        ones: m.column_ones(j).count(),
                    })
                }
            }
        }
        Ok(Self::from_raw_parts(colors, m.k()))
    }
}

#[derive(Serialize, Deserialize)]
struct AssignmentRepr {
    k: usize,
    colors: Vec<u32>,
}

impl From<ColorAssignment> for AssignmentRepr {
    fn from(a: ColorAssignment) -> Self {
        Self {
            k: a.k,
            colors: a.colors.into_iter().map(|c| c + 1).collect(),
        }
    }
}

impl TryFrom<AssignmentRepr> for ColorAssignment {
    type Error = ColoringError;

    fn try_from(r: AssignmentRepr) -> Result<Self, Self::Error> {
        Self::from_one_based(&r.colors, r.k)
    }
}

/// Unconstrained K×n bit matrix, as produced by measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBinaryMatrix {
    k: usize,
    n: usize,
    /// Row-major.
    bits: Vec<bool>,
}

impl RawBinaryMatrix {
    pub fn zeros(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            bits: vec![false; k * n],
        }
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        Self {
            k,
            n,
            bits: rows.concat(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        self.bits[row * self.n + col] = bit;
    }

    /// Row indices holding a 1 in column `col`.
    pub fn column_ones(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).filter(move |&i| self.get(i, col))
    }

    /// Number of 1s in row `row`.
    pub fn row_ones(&self, row: usize) -> usize {
        self.bits[row * self.n..(row + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}

/// Turns a measured matrix into an assignment: a column with several 1s keeps
/// one of them uniformly at random, an empty column receives a uniform color,
/// and a one-hot column is kept as is.
pub fn repair<R: Rng + ?Sized>(raw: &RawBinaryMatrix, rng: &mut R) -> ColorAssignment {
    assert!(raw.k() >= 1, "repair needs at least one row");
    let mut ones = Vec::with_capacity(raw.k());
    let colors = (0..raw.n())
        .map(|j| {
            ones.clear();
            ones.extend(raw.column_ones(j));
            match ones.len() {
                0 => rng.random_range(0..raw.k()) as u32,
                1 => ones[0] as u32,
                len => ones[rng.random_range(0..len)] as u32,
            }
        })
        .collect();
    ColorAssignment::from_raw_parts(colors, raw.k())
}

/// Colors other than `v`'s own that no neighbor of `v` uses, ascending and
/// 0-based.
pub fn alternative_colors(g: &Graph, a: &ColorAssignment, v: usize) -> Vec<u32> {
    let mut used = vec![false; a.k()];
    let mut out = Vec::new();
    alternative_colors_into(g, a.colors(), a.k(), v, &mut used, &mut out);
    out
}

/// Allocation-free variant of [`alternative_colors`]; `used` must have length
/// `k` and be all `false` on entry, and is restored on exit.
pub(crate) fn alternative_colors_into(
    g: &Graph,
    colors: &[u32],
    k: usize,
    v: usize,
    used: &mut [bool],
    out: &mut Vec<u32>,
) {
    out.clear();
    for &u in g.neighbors(v) {
        used[colors[u] as usize] = true;
    }
    used[colors[v] as usize] = true;
    out.extend((0..k as u32).filter(|&c| !used[c as usize]));
    for &u in g.neighbors(v) {
        used[colors[u] as usize] = false;
    }
    used[colors[v] as usize] = false;
}

/// Errors in the `s`/`v` solution text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("no `s k <K> f <conflicts>` header line")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: vertex {vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("line {line}: color {color} outside 1..={k}")]
    ColorOutOfRange { line: usize, color: u64, k: usize },
    #[error("vertex {vertex} has no `v` line")]
    MissingVertex { vertex: usize },
}

/// A parsed solution file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub assignment: ColorAssignment,
    /// Conflict count claimed by the header.
    pub declared_conflicts: usize,
}

/// Renders `s k <K> f <conflicts>` followed by one `v <vertex> <color>` line
/// per vertex.
pub fn write_solution(a: &ColorAssignment, conflicts: usize) -> String {
    let mut out = String::with_capacity(12 * (a.n() + 1));
    let _ = writeln!(out, "s k {} f {}", a.k(), conflicts);
    for v in 0..a.n() {
        let _ = writeln!(out, "v {} {}", v + 1, a.color(v));
    }
    out
}

/// Parses the solution text format for a graph on `n` vertices.
pub fn parse_solution(text: &str, n: usize) -> Result<Solution, SolutionError> {
    let mut header: Option<(usize, usize)> = None;
    let mut colors: Vec<Option<u32>> = vec![None; n];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&kind) = tokens.first() else {
            continue;
        };
        let malformed = |message: &str| SolutionError::Malformed {
            line,
            message: message.to_string(),
        };
        let number = |t: &str| -> Result<u64, SolutionError> {
            t.parse()
                .map_err(|_| malformed(&format!("expected an integer, found `{t}`")))
        };
        match kind {
            "c" => {}
            "s" => {
                if header.is_some() {
                    return Err(malformed("duplicate `s` line"));
                }
                if tokens.len() != 5 || tokens[1] != "k" || tokens[3] != "f" {
                    return Err(malformed("expected `s k <K> f <conflicts>`"));
                }
                let k = number(tokens[2])? as usize;
                if k == 0 {
                    return Err(malformed("color count must be at least 1"));
                }
                header = Some((k, number(tokens[4])? as usize));
            }
            "v" => {
                let Some((k, _)) = header else {
                    return Err(malformed("`v` line before the `s` line"));
                };
                if tokens.len() != 3 {
                    return Err(malformed("expected `v <vertex> <color>`"));
                }
                let vertex = number(tokens[1])?;
                let color = number(tokens[2])?;
                if vertex == 0 || vertex > n as u64 {
                    return Err(SolutionError::VertexOutOfRange { line, vertex, n });
                }
                if color == 0 || color > k as u64 {
                    return Err(SolutionError::ColorOutOfRange { line, color, k });
                }
                let slot = &mut colors[vertex as usize - 1];
                if slot.is_some() {
                    return Err(SolutionError::DuplicateVertex {
                        line,
                        vertex: vertex as usize,
                    });
                }
                *slot = Some(color as u32 - 1);
            }
            other => return Err(malformed(&format!("unknown line type `{other}`"))),
        }
    }

    let (k, declared_conflicts) = header.ok_or(SolutionError::MissingHeader)?;
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(SolutionError::MissingVertex { vertex: v + 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Solution {
        assignment: ColorAssignment::from_raw_parts(colors, k),
        declared_conflicts,
    })
}
