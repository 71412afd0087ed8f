//! Command-line front end: dataset loading, algorithm dispatch, result
//! serialization, and the benchmark harness.
//!
//! Exit codes: 0 success, 2 input error, 3 precondition error, 4 internal
//! invariant violation.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::augment::augment;
use crate::coredec::decompose;
use crate::error::{DsdError, Result};
use crate::exact::{brute_force_densest_with_cap, flow_exact_densest, ExactResult, BRUTE_FORCE_CAP};
use crate::graph::Graph;
use crate::peel::{peel_densest, PeelConfig};

/// Fixed bench/CSV schema. The first eleven columns are the pinned run
/// fields; exact numerator/denominator and the error marker follow.
pub const CSV_HEADER: &str =
    "dataset,algorithm,epsilon,workers,density,vertices,edges,passes,eligible,legit,ms,density_num,density_den,error";

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub dataset: String,
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<u64>,
    pub density: f64,
    pub density_num: u64,
    pub density_den: u64,
    pub vertices: u64,
    pub edges: f64,
    /// Peeling passes, decomposition levels, or flow search iterations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eligible: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_density_core: Option<u32>,
    pub ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub dataset: String,
    pub num_vertices: u64,
    pub num_edges: u64,
    pub raw_line_count: u64,
    pub max_degree: u32,
    pub self_loop_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactMethodArg {
    Flow,
    Bruteforce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgorithm {
    Peel,
    Cbds,
}

#[derive(Debug, Parser)]
#[command(name = "dsd", about = "Densest subgraph discovery toolkit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dataset summary: vertex/edge counts, raw line count, max degree.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "self-loops")]
        self_loops: bool,
    },
    /// Greedy peeling approximation.
    Peel {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        members: bool,
        #[arg(long = "self-loops")]
        self_loops: bool,
    },
    /// Core decomposition followed by augmentation.
    Cbds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        members: bool,
        #[arg(long = "self-loops")]
        self_loops: bool,
    },
    /// Exact oracle (max-flow binary search or subset enumeration).
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExactMethodArg::Flow)]
        method: ExactMethodArg,
        #[arg(long, default_value_t = BRUTE_FORCE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        members: bool,
        #[arg(long = "self-loops")]
        self_loops: bool,
    },
    /// Cross-product benchmark over datasets, algorithms, worker counts and
    /// epsilon values, one CSV row per run.
    Bench {
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long = "algorithm", value_enum)]
        algorithms: Vec<BenchAlgorithm>,
        #[arg(long = "threads")]
        threads: Vec<usize>,
        #[arg(long = "epsilon")]
        epsilons: Vec<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long = "self-loops")]
        self_loops: bool,
    },
}

pub fn exit_code(err: &DsdError) -> i32 {
    match err {
        DsdError::Parse { .. }
        | DsdError::EmptyGraph(_)
        | DsdError::Io(_)
        | DsdError::Serialize(_) => 2,
        DsdError::TooLarge(_) | DsdError::Precondition(_) => 3,
        DsdError::Invariant(_) => 4,
    }
}

pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    match cli.command {
        Command::Stats { input, self_loops } => {
            let graph = load(&input, self_loops)?;
            let report = StatsReport {
                dataset: dataset_label(&input),
                num_vertices: graph.num_vertices() as u64,
                num_edges: graph.num_edges(),
                raw_line_count: graph.raw_line_count(),
                max_degree: graph.max_degree(),
                self_loop_count: graph.self_loop_count(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        Command::Peel { input, epsilon, threads, format, members, self_loops } => {
            let graph = load(&input, self_loops)?;
            let workers = resolve_threads(threads);
            let record = run_peel(&graph, &dataset_label(&input), epsilon, workers, members)?;
            emit(out, &record, format)?;
        }
        Command::Cbds { input, threads, format, members, self_loops } => {
            let graph = load(&input, self_loops)?;
            let workers = resolve_threads(threads);
            let record = run_cbds(&graph, &dataset_label(&input), workers, members)?;
            emit(out, &record, format)?;
        }
        Command::Exact { input, method, cap, format, members, self_loops } => {
            let graph = load(&input, self_loops)?;
            let record = run_exact(&graph, &dataset_label(&input), method, cap, members)?;
            emit(out, &record, format)?;
        }
        Command::Bench { inputs, algorithms, threads, epsilons, csv, self_loops } => {
            let algorithms = if algorithms.is_empty() {
                vec![BenchAlgorithm::Peel, BenchAlgorithm::Cbds]
            } else {
                algorithms
            };
            let threads = if threads.is_empty() { vec![resolve_threads(None)] } else { threads };
            let epsilons = if epsilons.is_empty() { vec![0.0] } else { epsilons };
            let rows = run_bench(&inputs, &algorithms, &threads, &epsilons, self_loops)?;
            match csv {
                Some(path) => {
                    let mut file = File::create(path)?;
                    write_csv(&mut file, &rows)?;
                }
                None => write_csv(out, &rows)?,
            }
        }
    }
    Ok(())
}

fn load(path: &Path, self_loops: bool) -> Result<Graph> {
    let file = File::open(path)?;
    Graph::parse_edge_list(BufReader::new(file), self_loops)
}

fn dataset_label(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn resolve_threads(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    })
}

fn member_labels(graph: &Graph, members: &[u32]) -> Vec<u64> {
    let mut labels: Vec<u64> = members.iter().map(|&v| graph.label(v)).collect();
    labels.sort_unstable();
    labels
}

pub fn run_peel(
    graph: &Graph,
    dataset: &str,
    epsilon: f64,
    workers: usize,
    with_members: bool,
) -> Result<RunRecord> {
    let start = Instant::now();
    let result = peel_densest(graph, &PeelConfig { epsilon, workers })?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let best = &result.pass_trace[result.best_pass as usize];
    Ok(RunRecord {
        dataset: dataset.into(),
        algorithm: "peel".into(),
        epsilon: Some(epsilon),
        workers: Some(workers as u64),
        density: result.best_density.value,
        density_num: result.best_density.edges,
        density_den: result.best_density.vertices,
        vertices: best.vertices,
        edges: best.edges as f64,
        passes: Some(result.passes_executed as u64),
        eligible: None,
        legit: None,
        max_density_core: None,
        ms,
        members: with_members.then(|| member_labels(graph, &result.members())),
    })
}

pub fn run_cbds(
    graph: &Graph,
    dataset: &str,
    workers: usize,
    with_members: bool,
) -> Result<RunRecord> {
    let start = Instant::now();
    let decomp = decompose(graph, workers)?;
    let result = augment(graph, &decomp, workers);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunRecord {
        dataset: dataset.into(),
        algorithm: "cbds".into(),
        epsilon: None,
        workers: Some(workers as u64),
        density: result.final_density.value,
        density_num: result.final_density.edges,
        density_den: result.final_density.vertices,
        vertices: result.final_vertices,
        edges: result.intermediate_edge_halves as f64 / 2.0 + decomp.m_e as f64,
        passes: Some(decomp.level_trace.len() as u64),
        eligible: Some(result.eligible_count),
        legit: Some(result.legit_vertices.len() as u64),
        max_density_core: Some(decomp.max_density_core),
        ms,
        members: with_members.then(|| member_labels(graph, &result.members(decomp.max_density_core))),
    })
}

pub fn run_exact(
    graph: &Graph,
    dataset: &str,
    method: ExactMethodArg,
    cap: usize,
    with_members: bool,
) -> Result<RunRecord> {
    let start = Instant::now();
    let result: ExactResult = match method {
        ExactMethodArg::Flow => flow_exact_densest(graph)?,
        ExactMethodArg::Bruteforce => brute_force_densest_with_cap(graph, cap)?,
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let name = match method {
        ExactMethodArg::Flow => "exact-flow",
        ExactMethodArg::Bruteforce => "exact-bruteforce",
    };
    Ok(RunRecord {
        dataset: dataset.into(),
        algorithm: name.into(),
        epsilon: None,
        workers: None,
        density: result.density.value,
        density_num: result.density.edges,
        density_den: result.density.vertices,
        vertices: result.members.len() as u64,
        edges: result.density.edges as f64,
        passes: Some(result.search_iterations),
        eligible: None,
        legit: None,
        max_density_core: None,
        ms,
        members: with_members.then(|| member_labels(graph, &result.members)),
    })
}

pub struct BenchRow {
    pub record: Option<RunRecord>,
    pub context: (String, String, Option<f64>, u64),
    pub error: Option<String>,
}

fn run_bench(
    inputs: &[PathBuf],
    algorithms: &[BenchAlgorithm],
    threads: &[usize],
    epsilons: &[f64],
    self_loops: bool,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for input in inputs {
        let label = dataset_label(input);
        let graph = match load(input, self_loops) {
            Ok(g) => g,
            Err(e) => {
                rows.push(BenchRow {
                    record: None,
                    context: (label, String::new(), None, 0),
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        for &algorithm in algorithms {
            let eps_list: &[f64] = match algorithm {
                BenchAlgorithm::Peel => epsilons,
                BenchAlgorithm::Cbds => &[0.0],
            };
            for &epsilon in eps_list {
                let mut group: Vec<(u64, f64, u64, u64)> = Vec::new();
                for &workers in threads {
                    let outcome = match algorithm {
                        BenchAlgorithm::Peel => {
                            run_peel(&graph, &label, epsilon, workers, false)
                        }
                        BenchAlgorithm::Cbds => run_cbds(&graph, &label, workers, false),
                    };
                    match outcome {
                        Ok(record) => {
                            group.push((
                                workers as u64,
                                record.density,
                                record.density_num,
                                record.density_den,
                            ));
                            rows.push(BenchRow {
                                record: Some(record),
                                context: (
                                    label.clone(),
                                    algo_name(algorithm).into(),
                                    peel_eps(algorithm, epsilon),
                                    workers as u64,
                                ),
                                error: None,
                            });
                        }
                        Err(e) => rows.push(BenchRow {
                            record: None,
                            context: (
                                label.clone(),
                                algo_name(algorithm).into(),
                                peel_eps(algorithm, epsilon),
                                workers as u64,
                            ),
                            error: Some(e.to_string()),
                        }),
                    }
                }
                if let Some(first) = group.first() {
                    for other in &group[1..] {
                        if other.1 != first.1 || other.2 != first.2 || other.3 != first.3 {
                            return Err(DsdError::Invariant(format!(
                                "density diverged across worker counts for {} / {} (workers {} vs {})",
                                label,
                                algo_name(algorithm),
                                first.0,
                                other.0
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn algo_name(a: BenchAlgorithm) -> &'static str {
    match a {
        BenchAlgorithm::Peel => "peel",
        BenchAlgorithm::Cbds => "cbds",
    }
}

fn peel_eps(a: BenchAlgorithm, epsilon: f64) -> Option<f64> {
    match a {
        BenchAlgorithm::Peel => Some(epsilon),
        BenchAlgorithm::Cbds => None,
    }
}

fn emit<W: Write>(out: &mut W, record: &RunRecord, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(record)?)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            writeln!(out, "{}", csv_line(Some(record), None, None))?;
        }
    }
    Ok(())
}

fn write_csv<W: Write>(out: &mut W, rows: &[BenchRow]) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{}",
            csv_line(row.record.as_ref(), Some(&row.context), row.error.as_deref())
        )?;
    }
    Ok(())
}

fn csv_line(
    record: Option<&RunRecord>,
    context: Option<&(String, String, Option<f64>, u64)>,
    error: Option<&str>,
) -> String {
    match record {
        Some(r) => format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3},{},{},{}",
            r.dataset,
            r.algorithm,
            r.epsilon.map_or(String::new(), |e| e.to_string()),
            r.workers.map_or(String::new(), |w| w.to_string()),
            six_significant(r.density),
            r.vertices,
            trim_float(r.edges),
            r.passes.map_or(String::new(), |p| p.to_string()),
            r.eligible.map_or(String::new(), |e| e.to_string()),
            r.legit.map_or(String::new(), |l| l.to_string()),
            r.ms,
            r.density_num,
            r.density_den,
            error.unwrap_or(""),
        ),
        None => {
            let (dataset, algorithm, epsilon, workers) =
                context.expect("error row requires context");
            format!(
                "{},{},{},{},,,,,,,,,,{}",
                dataset,
                algorithm,
                epsilon.map_or(String::new(), |e| e.to_string()),
                if *workers == 0 { String::new() } else { workers.to_string() },
                error.unwrap_or("unknown error"),
            )
        }
    }
}

/// Six significant digits with a '.' decimal point.
pub fn six_significant(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let precision = (5 - magnitude).max(0) as usize;
    format!("{x:.precision$}")
}

fn trim_float(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{}", x as u64)
    } else {
        format!("{x:.1}")
    }
}
