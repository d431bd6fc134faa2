use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cqea::bench::{self, BenchSummary, InstanceSummary, Skipped};
use cqea::instances::{env_search_path, resolve, INSTANCE_DIR_ENV};
use cqea::{parse_solution, write_solution, CqeaConfigF64, Error, LevyParamsF64};

const EXIT_IMPROPER: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_SOLUTION: u8 = 5;
const EXIT_CONFIG: u8 = 6;

#[derive(Parser)]
#[command(
    name = "cqea",
    version,
    about = "Cuckoo quantum evolutionary graph coloring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one DIMACS instance.
    Solve {
        /// Path to a `.col` file, or an instance name looked up in the
        /// instance directory or among the built-in generators.
        instance: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        params: SolverArgs,
        /// Write the JSON run report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the witness in `s`/`v` solution format here.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Repeated seeded runs over a set of instances.
    Bench {
        /// Instance files, directories of `.col` files, or instance names.
        #[arg(required = true)]
        instances: Vec<String>,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed_base: u64,
        /// Concurrent runs; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        params: SolverArgs,
        /// Write the JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the per-run CSV here (standard output when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a solution file against an instance.
    Verify { instance: String, solution: PathBuf },
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Population size; defaults to the manifest value or a size-based rule.
    #[arg(long)]
    pop_size: Option<usize>,
    #[arg(long, default_value_t = 500)]
    max_inner: usize,
    /// Outer iterations; defaults to Δ(G) + 1.
    #[arg(long)]
    max_outer: Option<usize>,
    /// Local-search passes per call.
    #[arg(long, default_value_t = 5)]
    limit: usize,
    #[arg(long, default_value_t = 1.5)]
    levy_exponent: f64,
    #[arg(long, default_value_t = 0.1)]
    levy_scale: f64,
    #[arg(long, default_value_t = 0.1)]
    walk_scale: f64,
    #[arg(long, default_value_t = 0.25)]
    walk_fraction: f64,
    #[arg(long, default_value_t = 1)]
    archive_capacity: usize,
    #[arg(long)]
    target_k: Option<usize>,
    #[arg(long)]
    time_limit_s: Option<f64>,
    /// Keep the better of nest and random-walked offspring.
    #[arg(long)]
    keep_better: bool,
}

impl SolverArgs {
    fn config(&self, pop_size: usize, seed: u64) -> Result<CqeaConfigF64, String> {
        let time_limit_ms = match self.time_limit_s {
            Some(s) if !(s.is_finite() && s > 0.0) => {
                return Err("--time-limit-s must be positive".into())
            }
            Some(s) => Some((s * 1e3).ceil() as u64),
            None => None,
        };
        let cfg = CqeaConfigF64 {
            pop_size,
            max_inner: self.max_inner,
            max_outer: self.max_outer,
            limit: self.limit,
            levy: LevyParamsF64 {
                exponent: self.levy_exponent,
                step_scale: self.levy_scale,
                walk_scale: self.walk_scale,
                walk_fraction: self.walk_fraction,
            },
            archive_capacity: self.archive_capacity,
            target_k: self.target_k,
            seed,
            keep_better: self.keep_better,
            time_limit_ms,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::Parse { .. } => EXIT_PARSE,
        Error::Solution { .. } => EXIT_SOLUTION,
        Error::Search(_) => EXIT_CONFIG,
        _ => EXIT_IO,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(&err))
}

fn config_error(msg: String) -> ExitCode {
    eprintln!("error: invalid configuration: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            instance,
            seed,
            params,
            out,
            solution,
        } => cmd_solve(
            &instance,
            seed,
            &params,
            out.as_deref(),
            solution.as_deref(),
        ),
        Command::Bench {
            instances,
            runs,
            seed_base,
            jobs,
            params,
            out,
            csv,
        } => cmd_bench(
            &instances,
            runs,
            seed_base,
            jobs,
            &params,
            out.as_deref(),
            csv.as_deref(),
        ),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
    }
}

fn cmd_solve(
    instance: &str,
    seed: u64,
    params: &SolverArgs,
    out: Option<&Path>,
    solution: Option<&Path>,
) -> ExitCode {
    // Reject bad flags before touching the file system.
    if let Err(msg) = params.config(1, seed) {
        return config_error(msg);
    }
    let (g, meta) = match resolve(instance, &env_search_path()) {
        Ok(found) => found,
        Err(e) => return fail(e),
    };
    let cfg = match params.config(bench::pop_size_for(&meta, params.pop_size), seed) {
        Ok(cfg) => cfg,
        Err(msg) => return config_error(msg),
    };
    let report = match bench::solve(&g, &meta, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };

    let best = meta.best_known.map_or("unknown".into(), |b| b.to_string());
    println!(
        "{}: n={} m={} best_known={} -> {} colors, {} conflicts, {} inner iterations, {:.1} ms",
        meta.name,
        meta.n,
        meta.m,
        best,
        report.colors_found,
        report.conflicts,
        report.total_inner_iterations(),
        report.wall_ms
    );
    for (k, it) in &report.per_k_iterations {
        println!("  k={k:<4} iterations={it}");
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = write_file(path, &json) {
            return fail(e);
        }
    }
    if let Some(path) = solution {
        if let Err(e) = write_file(path, &write_solution(&report.witness, report.conflicts)) {
            return fail(e);
        }
    }
    ExitCode::SUCCESS
}

/// Expands directories into their `.col` files, sorted by name.
fn expand_instances(specs: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for spec in specs {
        let path = Path::new(spec);
        if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .into_iter()
                .flatten()
                .flatten()
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "col"))
                .collect();
            files.sort();
            out.extend(files.into_iter().map(|p| p.to_string_lossy().into_owned()));
        } else {
            out.push(spec.clone());
        }
    }
    out
}

fn cmd_bench(
    instances: &[String],
    runs: usize,
    seed_base: u64,
    jobs: Option<usize>,
    params: &SolverArgs,
    out: Option<&Path>,
    csv: Option<&Path>,
) -> ExitCode {
    if runs == 0 {
        return config_error("--runs must be at least 1".into());
    }
    if jobs == Some(0) {
        return config_error("--jobs must be at least 1".into());
    }
    if let Err(msg) = params.config(1, seed_base) {
        return config_error(msg);
    }
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let search_path = env_search_path();

    let mut summaries = Vec::new();
    let mut skipped = Vec::new();
    for spec in expand_instances(instances) {
        let (g, meta) = match resolve(&spec, &search_path) {
            Ok(found) => found,
            Err(e) => {
                eprintln!("skipping {spec}: {e}");
                skipped.push(Skipped {
                    instance: spec,
                    error: e.to_string(),
                });
                continue;
            }
        };
        let cfg = params
            .config(bench::pop_size_for(&meta, params.pop_size), seed_base)
            .expect("validated above");
        match bench::run_campaign(&g, &meta, &cfg, runs, seed_base, jobs) {
            Ok(reports) => summaries.extend(InstanceSummary::new(reports)),
            Err(e) => return fail(e),
        }
    }
    if summaries.is_empty() {
        eprintln!("error: no instance could be loaded (set {INSTANCE_DIR_ENV} or pass file paths)");
        return ExitCode::from(EXIT_IO);
    }

    eprint!("{}", bench::format_summary_table(&summaries));
    let csv_result = match csv {
        Some(path) => fs::File::create(path)
            .map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })
            .and_then(|f| bench::write_csv(f, &summaries)),
        None => bench::write_csv(std::io::stdout().lock(), &summaries),
    };
    if let Err(e) = csv_result {
        return fail(e);
    }
    if let Some(path) = out {
        let summary = BenchSummary {
            seed_base,
            runs_per_instance: runs,
            instances: summaries,
            skipped,
        };
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        if let Err(e) = write_file(path, &json) {
            return fail(e);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(instance: &str, solution: &Path) -> ExitCode {
    let (g, _) = match resolve(instance, &env_search_path()) {
        Ok(found) => found,
        Err(e) => return fail(e),
    };
    let text = match fs::read_to_string(solution) {
        Ok(t) => t,
        Err(source) => {
            return fail(Error::Io {
                path: solution.to_path_buf(),
                source,
            })
        }
    };
    let parsed = match parse_solution(&text, g.n()) {
        Ok(s) => s,
        Err(source) => {
            return fail(Error::Solution {
                path: solution.to_path_buf(),
                source,
            })
        }
    };
    match bench::verify(&g, &parsed) {
        Ok(verdict) => {
            print!("{verdict}");
            if verdict.proper {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_IMPROPER)
            }
        }
        Err(e) => fail(e),
    }
}
