//! The `sfcolor` command line: `color`, `verify`, `gen` and `analyze`.
//!
//! Exit codes: 0 success, 1 verification failure or other error, 2 parse
//! error, 3 input not square-free, 4 input not Berge, 5 internal invariant
//! violation.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dimacs;
use crate::error::{Error, Result};
use crate::generators::{self, Construction, Generated};
use crate::graph::{find_triads, is_berge_capped, maximal_cliques, omega, BergeVerdict, Graph, DEFAULT_BERGE_CAP};
use crate::partition::{find_good_partition, verify_good_partition, GoodPartition, Verdict};
use crate::solver::{self, ColorResult, SolveStats, SolverOptions, TraceEvent};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const NOT_SQUARE_FREE: u8 = 3;
    pub const NOT_BERGE: u8 = 4;
    pub const INTERNAL: u8 = 5;
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) => exit::PARSE,
        Error::NotSquareFree(_) => exit::NOT_SQUARE_FREE,
        Error::NotBerge { .. } => exit::NOT_BERGE,
        Error::InternalViolation(_) | Error::BergeViolation(_) | Error::Infeasible { .. } => exit::INTERNAL,
        _ => exit::FAILURE,
    }
}

#[derive(Debug, Parser)]
#[command(name = "sfcolor", version, about = "Exact omega-coloring of square-free Berge graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color a DIMACS graph with omega colors.
    Color(ColorArgs),
    /// Check a coloring or a partition against a graph.
    Verify(VerifyArgs),
    /// Write a generated graph as DIMACS plus a JSON sidecar.
    Gen(GenArgs),
    /// Report structural facts about a graph.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct BergeFlags {
    /// Largest graph on which the brute-force Berge check runs.
    #[arg(long, default_value_t = DEFAULT_BERGE_CAP)]
    pub berge_cap: usize,
    /// Skip the Berge check.
    #[arg(long)]
    pub trust_berge: bool,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    pub graph: PathBuf,
    /// Coloring output (`v <vertex> <color>` lines); stdout if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON run report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Decomposition tree as JSON.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Decomposition tree as Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub berge: BergeFlags,
    /// Stream decomposition and swap events to stderr as JSON lines.
    #[arg(long)]
    pub trace: bool,
    /// Worker threads; more than one colors sibling subproblems concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "artifact")]
pub struct Artifact {
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// JSON object with keys K1, K2, K3, L, R (0-based vertex ids).
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub artifact: Artifact,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    /// DIMACS output; the sidecar goes to `<output>.json`. Stdout if omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Prism with three rung lengths.
    Prism {
        #[arg(num_args = 3, required = true)]
        lengths: Vec<usize>,
    },
    /// Hyperprism; each strip is a comma-separated list of rung lengths.
    Hyperprism {
        #[arg(num_args = 3, required = true)]
        strips: Vec<String>,
    },
    /// Line graph of a subdivided K4 with six branch lengths.
    Lk4 {
        #[arg(num_args = 6, required = true)]
        branches: Vec<usize>,
    },
    /// Random square-free Berge graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub berge: BergeFlags,
    /// Also write the report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct Checks {
    pub square_free: Option<bool>,
    pub square: Option<[usize; 4]>,
    /// `None` when skipped.
    pub berge: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Status {
    pub exit_code: u8,
    pub message: String,
}

/// Report written by `color`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: Option<InputInfo>,
    pub checks: Checks,
    pub omega: Option<usize>,
    pub colors_used: Option<usize>,
    pub wall_time_ms: f64,
    pub stats: Option<SolveStats>,
    pub tree_nodes: Option<usize>,
    pub tree_depth: Option<usize>,
    pub warnings: Vec<String>,
    pub status: Status,
}

/// Report written by `analyze`.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputInfo,
    pub square_free: bool,
    pub square: Option<[usize; 4]>,
    pub berge: Option<BergeVerdict>,
    pub omega: usize,
    pub maximal_cliques: usize,
    pub triads: usize,
    /// Not searched on graphs with a square.
    pub good_partition: Option<bool>,
    pub partition: Option<GoodPartition>,
}

/// Parses `args` (including the program name) and runs the command.
/// Human-readable results go to `out`, diagnostics to `err`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{}", e.render());
            exit::PARSE
        }
        Err(e) => {
            // --help and --version
            let _ = write!(out, "{}", e.render());
            exit::SUCCESS
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let res = match cli.command {
        Command::Color(a) => cmd_color(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Analyze(a) => cmd_analyze(&a, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_graph_file(path: &Path) -> Result<Graph> {
    dimacs::read_graph(BufReader::new(fs::File::open(path)?))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => Ok(out.write_all(bytes)?),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn cmd_color(a: &ColorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let start = Instant::now();
    let mut report = RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "color",
        input: None,
        checks: Checks::default(),
        omega: None,
        colors_used: None,
        wall_time_ms: 0.0,
        stats: None,
        tree_nodes: None,
        tree_depth: None,
        warnings: Vec::new(),
        status: Status { exit_code: 0, message: String::new() },
    };
    let outcome = color_file(a, &mut report, err);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let code = match &outcome {
        Ok(res) => {
            emit(a.output.as_deref(), dimacs::coloring_to_string(&res.coloring).as_bytes(), out)?;
            if let Some(p) = &a.tree {
                write_atomic(p, &json_bytes(&res.tree)?)?;
            }
            if let Some(p) = &a.dot {
                write_atomic(p, res.tree.to_dot().as_bytes())?;
            }
            report.status.message = format!("colored with {} colors", res.colors_used);
            exit::SUCCESS
        }
        Err(e) => {
            report.status.message = e.to_string();
            exit_code(e)
        }
    };
    report.status.exit_code = code;
    if let Some(p) = &a.report {
        write_atomic(p, &json_bytes(&report)?)?;
    }
    for w in &report.warnings {
        writeln!(err, "warning: {w}")?;
    }
    match outcome {
        Ok(_) => Ok(code),
        Err(e) => Err(e),
    }
}

fn color_file(a: &ColorArgs, report: &mut RunReport, err: &mut dyn Write) -> Result<ColorResult> {
    let g = read_graph_file(&a.graph)?;
    report.input = Some(InputInfo { path: a.graph.display().to_string(), n: g.n(), m: g.m() });
    let trace: Option<Arc<Mutex<Vec<u8>>>> = a.trace.then(|| Arc::new(Mutex::new(Vec::new())));
    let opts = SolverOptions {
        berge_cap: Some(a.berge.berge_cap),
        trust_berge: a.berge.trust_berge,
        parallel: a.jobs > 1,
        trace: trace.clone().map(|buf| {
            Arc::new(move |ev: &TraceEvent| {
                let mut line = serde_json::to_vec(ev).expect("trace events serialize");
                line.push(b'\n');
                buf.lock().expect("trace buffer").extend_from_slice(&line);
            }) as solver::TraceSink
        }),
    };
    let res = if a.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(a.jobs)
            .build()
            .map_err(|e| Error::InternalViolation(format!("thread pool: {e}")))?;
        pool.install(|| solver::color_with(&g, &opts))
    } else {
        solver::color_with(&g, &opts)
    };
    if let Some(buf) = trace {
        err.write_all(&buf.lock().expect("trace buffer"))?;
    }
    match &res {
        Ok(r) => {
            report.checks = Checks {
                square_free: Some(true),
                square: None,
                berge: r.stats.berge_checked.then_some(true),
            };
            report.omega = Some(r.omega);
            report.colors_used = Some(r.colors_used);
            report.stats = Some(r.stats.clone());
            report.tree_nodes = Some(r.tree.node_count());
            report.tree_depth = Some(r.tree.depth());
            report.warnings = r.warnings.clone();
        }
        Err(Error::NotSquareFree(sq)) => {
            report.checks = Checks { square_free: Some(false), square: Some(*sq), berge: None };
        }
        Err(Error::NotBerge { .. }) => {
            report.checks = Checks { square_free: Some(true), square: None, berge: Some(false) };
        }
        Err(_) => {}
    }
    res
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let g = read_graph_file(&a.graph)?;
    if let Some(path) = &a.artifact.coloring {
        let c = dimacs::read_coloring(BufReader::new(fs::File::open(path)?), g.n())?;
        let verdict = solver::verify_coloring(&g, &c);
        writeln!(out, "{verdict}")?;
        return Ok(if verdict.is_valid() { exit::SUCCESS } else { exit::FAILURE });
    }
    let path = a.artifact.partition.as_ref().expect("clap requires one artifact");
    let p: GoodPartition = serde_json::from_reader(BufReader::new(fs::File::open(path)?))?;
    match verify_good_partition(&g, &p)? {
        Verdict::Good { triad } => {
            writeln!(out, "good partition; triad {triad:?} meets L and R")?;
            Ok(exit::SUCCESS)
        }
        Verdict::Violated(v) => {
            writeln!(out, "condition ({}) violated: {v:?}", v.condition())?;
            Ok(exit::FAILURE)
        }
    }
}

fn generate(family: &Family) -> Result<Generated> {
    let wrap = |graph: Graph, construction: Construction| {
        let validation = generators::validate(&graph, generators::GENERATOR_BERGE_CAP);
        Generated { graph, construction, validation }
    };
    match family {
        Family::Prism { lengths } => {
            let lengths: [usize; 3] = lengths.as_slice().try_into().expect("clap enforces three lengths");
            Ok(wrap(generators::gen_prism(&generators::PrismSpec::new(lengths))?, Construction::Prism { lengths }))
        }
        Family::Hyperprism { strips } => {
            let parse = |s: &String| -> Result<Vec<usize>> {
                s.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Spec(format!("bad rung length {t:?}"))))
                    .collect()
            };
            let strips: [Vec<usize>; 3] = [parse(&strips[0])?, parse(&strips[1])?, parse(&strips[2])?];
            let h = generators::gen_hyperprism(&generators::HyperprismSpec::new(strips.clone()))?;
            Ok(Generated { graph: h.graph, construction: Construction::Hyperprism { strips }, validation: h.validation })
        }
        Family::Lk4 { branches } => {
            let branches: [usize; 6] = branches.as_slice().try_into().expect("clap enforces six lengths");
            Ok(wrap(generators::gen_lk4_subdivision(&branches)?, Construction::Lk4 { branches }))
        }
        Family::Random { n, seed } => generators::gen_square_free_berge(*n, *seed),
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<u8> {
    let generated = generate(&a.family)?;
    emit(a.output.as_deref(), dimacs::graph_to_string(&generated.graph).as_bytes(), out)?;
    if let Some(p) = &a.output {
        let mut sidecar = p.clone().into_os_string();
        sidecar.push(".json");
        write_atomic(Path::new(&sidecar), &json_bytes(&generated.sidecar())?)?;
    }
    Ok(exit::SUCCESS)
}

/// Structural summary of `g`; the Berge check runs only below `berge_cap`.
pub fn analyze(g: &Graph, path: &str, berge_cap: Option<usize>) -> Result<AnalysisReport> {
    let square = crate::graph::contains_square(g);
    let berge = match berge_cap {
        Some(cap) if g.n() <= cap => Some(is_berge_capped(g, None)?),
        _ => None,
    };
    let partition = if square.is_none() { Some(find_good_partition(g)?) } else { None };
    Ok(AnalysisReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: InputInfo { path: path.to_string(), n: g.n(), m: g.m() },
        square_free: square.is_none(),
        square,
        berge,
        omega: omega(g),
        maximal_cliques: maximal_cliques(g).len(),
        triads: find_triads(g).len(),
        good_partition: partition.as_ref().map(Option::is_some),
        partition: partition.flatten(),
    })
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8> {
    let g = read_graph_file(&a.graph)?;
    let cap = (!a.berge.trust_berge).then_some(a.berge.berge_cap);
    let report = analyze(&g, &a.graph.display().to_string(), cap)?;
    let bytes = json_bytes(&report)?;
    out.write_all(&bytes)?;
    if let Some(p) = &a.report {
        write_atomic(p, &bytes)?;
    }
    Ok(exit::SUCCESS)
}

/// Entry point of the `sfcolor` binary.
pub fn main() -> std::process::ExitCode {
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    std::process::ExitCode::from(run_from(std::env::args_os(), &mut out, &mut err))
}
