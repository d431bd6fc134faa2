//! Benchmark manifest, built-in instance generators and instance lookup.
//!
//! The Mycielski and queen graphs are generated on the fly, so they are always
//! available. Every other benchmark is read from a DIMACS file found on the
//! search path (the `CQEA_INSTANCE_DIR` environment variable for the CLI).

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::graph::{read_dimacs, Graph, InstanceMeta};
use crate::Error;

/// Environment variable naming the default instance directory.
pub const INSTANCE_DIR_ENV: &str = "CQEA_INSTANCE_DIR";

/// Published results for one benchmark, kept for report rendering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub n: usize,
    pub m: usize,
    pub best_known: u32,
    pub pop_size: usize,
    pub published_min: u32,
    pub published_max: u32,
    pub published_mean: f64,
    pub published_std: f64,
    pub published_mean_iterations: f64,
    /// Colors reported by the three reference algorithms (MCOA, DBG, QICSA).
    pub reference_colors: [u32; 3],
    /// Success counts out of 15 (this solver, DBG), where published.
    pub success_of_15: Option<(u32, u32)>,
}

const fn entry(
    name: &'static str,
    (n, m, best_known, pop_size): (usize, usize, u32, usize),
    (published_min, published_max, published_mean, published_std, published_mean_iterations): (
        u32,
        u32,
        f64,
        f64,
        f64,
    ),
    reference_colors: [u32; 3],
    success_of_15: Option<(u32, u32)>,
) -> ManifestEntry {
    ManifestEntry {
        name,
        n,
        m,
        best_known,
        pop_size,
        published_min,
        published_max,
        published_mean,
        published_std,
        published_mean_iterations,
        reference_colors,
        success_of_15,
    }
}

pub static MANIFEST: [ManifestEntry; 13] = [
    entry(
        "myciel3",
        (11, 20, 4, 10),
        (4, 4, 4.0, 0.0, 1.0),
        [4, 4, 4],
        None,
    ),
    entry(
        "myciel4",
        (23, 71, 5, 10),
        (5, 5, 5.0, 0.0, 1.0),
        [5, 5, 5],
        None,
    ),
    entry(
        "queen5_5",
        (25, 160, 5, 10),
        (5, 5, 5.0, 0.0, 2.8),
        [5, 5, 5],
        None,
    ),
    entry(
        "queen6_6",
        (36, 290, 7, 10),
        (7, 8, 7.7, 0.458, 87.5),
        [8, 7, 8],
        Some((4, 15)),
    ),
    entry(
        "myciel5",
        (47, 236, 6, 6),
        (6, 6, 6.0, 0.0, 1.0),
        [6, 6, 6],
        None,
    ),
    entry(
        "huck",
        (74, 301, 11, 6),
        (11, 11, 11.0, 0.0, 1.0),
        [11, 11, 11],
        None,
    ),
    entry(
        "jean",
        (80, 254, 10, 6),
        (10, 10, 10.0, 0.0, 1.0),
        [10, 10, 10],
        None,
    ),
    entry(
        "david",
        (87, 406, 11, 6),
        (11, 11, 11.0, 0.0, 1.1),
        [11, 11, 11],
        Some((15, 14)),
    ),
    entry(
        "games120",
        (120, 638, 9, 6),
        (9, 9, 9.0, 0.0, 1.0),
        [9, 9, 9],
        Some((15, 15)),
    ),
    entry(
        "miles250",
        (128, 387, 8, 6),
        (8, 8, 8.0, 0.0, 8.7),
        [8, 8, 8],
        Some((15, 11)),
    ),
    entry(
        "miles500",
        (128, 1170, 20, 6),
        (20, 21, 20.5, 0.5, 1.0),
        [20, 20, 20],
        Some((10, 10)),
    ),
    entry(
        "anna",
        (138, 493, 11, 6),
        (11, 11, 11.0, 0.0, 1.0),
        [11, 11, 11],
        Some((15, 12)),
    ),
    entry(
        "fpsol2.i.1",
        (496, 11654, 65, 6),
        (65, 65, 65.0, 0.0, 1.0),
        [65, 65, 65],
        Some((15, 2)),
    ),
];

pub fn manifest_entry(name: &str) -> Option<&'static ManifestEntry> {
    MANIFEST.iter().find(|e| e.name == name)
}

/// Mycielski graph `myciel{k}`: `k - 1` Mycielski steps applied to `K2`
/// (`myciel3` is the Grötzsch graph), chromatic number `k + 1`.
pub fn mycielski(k: usize) -> Graph {
    assert!(k >= 2, "myciel graphs start at k = 2");
    let mut n = 2;
    let mut edges = vec![(0, 1)];
    for _ in 1..k {
        // Shadows n..2n, hub 2n.
        let mut next = edges.clone();
        for &(u, v) in &edges {
            next.push((u, n + v));
            next.push((v, n + u));
        }
        next.extend((0..n).map(|i| (n + i, 2 * n)));
        edges = next;
        n = 2 * n + 1;
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Queen graph on a `rows × cols` board: squares are adjacent when a queen
/// moves between them in one step.
pub fn queen(rows: usize, cols: usize) -> Graph {
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r1 in 0..rows {
        for c1 in 0..cols {
            for r2 in 0..rows {
                for c2 in 0..cols {
                    let (a, b) = (idx(r1, c1), idx(r2, c2));
                    if a < b && (r1 == r2 || c1 == c2 || r1.abs_diff(r2) == c1.abs_diff(c2)) {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("generated edges are valid")
}

/// Generates `myciel<k>` or `queen<r>_<c>` by name.
pub fn builtin(name: &str) -> Option<Graph> {
    if let Some(k) = name.strip_prefix("myciel").and_then(|s| s.parse().ok()) {
        return (2..=8).contains(&k).then(|| mycielski(k));
    }
    let (r, c) = name.strip_prefix("queen")?.split_once('_')?;
    let (r, c): (usize, usize) = (r.parse().ok()?, c.parse().ok()?);
    (1..=32).contains(&r).then_some(())?;
    (1..=32).contains(&c).then(|| queen(r, c))
}

/// Instance name derived from a path: file stem without `.col`.
pub fn instance_name(path: &Path) -> String {
    let file = path.file_name().map_or_else(
        || path.to_string_lossy().into_owned(),
        |f| f.to_string_lossy().into_owned(),
    );
    file.strip_suffix(".col")
        .map(str::to_string)
        .unwrap_or(file)
}

/// Directories from `CQEA_INSTANCE_DIR`, split like `PATH`.
pub fn env_search_path() -> Vec<PathBuf> {
    std::env::var_os(INSTANCE_DIR_ENV)
        .map(|v| std::env::split_paths(&v).collect())
        .unwrap_or_default()
}

/// Locates an instance given as a path or a bare name.
///
/// Tries the path itself, then `<dir>/<spec>` and `<dir>/<spec>.col` for every
/// search directory, then the built-in generators.
pub fn resolve(spec: &str, search_path: &[PathBuf]) -> Result<(Graph, InstanceMeta), Error> {
    let direct = PathBuf::from(spec);
    let candidates = std::iter::once(direct.clone()).chain(
        search_path
            .iter()
            .flat_map(|dir| [dir.join(spec), dir.join(format!("{spec}.col"))]),
    );
    for path in candidates {
        if path.is_file() {
            let g = read_dimacs(&path)?;
            let meta = meta_for(&instance_name(&path), &g);
            return Ok((g, meta));
        }
    }
    let name = instance_name(&direct);
    if let Some(g) = builtin(&name) {
        let meta = meta_for(&name, &g);
        return Ok((g, meta));
    }
    Err(Error::Io {
        path: direct,
        source: std::io::Error::new(std::io::ErrorKind::NotFound, "instance not found"),
    })
}

/// Metadata for a graph, with the best known value from the manifest when
/// the name and size match.
pub fn meta_for(name: &str, g: &Graph) -> InstanceMeta {
    let best_known = manifest_entry(name)
        .filter(|e| e.n == g.n())
        .map(|e| e.best_known);
    InstanceMeta {
        name: name.to_string(),
        n: g.n(),
        m: g.m(),
        best_known,
    }
}
