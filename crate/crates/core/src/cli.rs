//! Command-line front end. Exit codes: 0 success, 1 invalid witness or
//! theorem discrepancy, 2 usage or parse error, 3 solver cap exceeded.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::broadcast::{grid_broadcast, is_dominating, radius_broadcast};
use crate::certificate::certify_optimality;
use crate::constructions::{build_multipacking, gamma_b_value, mp_value};
use crate::document::{render_ascii, GraphDescriptor, Instance, InstanceDocument};
use crate::error::Error;
use crate::graph::{GeneralGraph, GridShape};
use crate::multipacking::{is_grid_multipacking, is_multipacking};
use crate::oracles::{crosscheck_grid, exact_gamma_b, exact_mp, DEFAULT_ORACLE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gridcast", version, about = "Optimal multipackings and broadcasts on grid graphs")]
struct Cli {
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Mp,
    Gammab,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a maximum multipacking of the n x m grid.
    Construct {
        n: usize,
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the witnesses in a document (file or stdin).
    Validate { input: Option<String> },
    /// Solve mp or gamma_b exactly: `solve grid 4 6 mp`, `solve cycle 9 gammab`,
    /// `solve random 12 mp --seed 3`.
    Solve {
        #[arg(value_parser = ["grid", "path", "cycle", "random"])]
        family: String,
        /// Dimensions followed by the problem (mp or gammab).
        #[arg(num_args = 2..=3, required = true)]
        rest: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Construct, validate and certify every grid from 4x4 to max_n x max_m.
    VerifyTheorem {
        max_n: usize,
        max_m: usize,
        /// Also run the exact solvers on grids with at most this many vertices.
        #[arg(long, default_value_t = 36)]
        oracle_cap: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Draw the grid witnesses of a document (file or stdin).
    Render { input: Option<String> },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Construct { n, m, format } => construct(n, m, format, out),
        Command::Validate { input } => read_document(input, stdin).and_then(|doc| validate(&doc, out)),
        Command::Solve { family, rest, oracle_cap } => solve(&family, &rest, oracle_cap, cli.seed, out),
        Command::VerifyTheorem { max_n, max_m, oracle_cap, format } => {
            verify_theorem(max_n, max_m, oracle_cap, format, out, err)
        }
        Command::Render { input } => read_document(input, stdin).and_then(|doc| render(&doc, out)),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) { EXIT_CAP } else { EXIT_USAGE };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn read_document(input: Option<String>, stdin: &mut dyn Read) -> Result<InstanceDocument, Failure> {
    let text = match input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
    };
    InstanceDocument::from_json(&text).map_err(|e| usage(format!("malformed document: {e}")))
}

/// The document `construct` emits for an `n x m` grid.
pub fn construct_document(n: usize, m: usize) -> crate::error::Result<InstanceDocument> {
    let shape = GridShape::new(n, m)?;
    let (packing, plan) = build_multipacking(n, m)?;
    let gamma_b = gamma_b_value(n, m)?;
    let mut doc = InstanceDocument::new(GraphDescriptor::Grid { n, m });
    doc.set_witnesses(&Instance::Grid(shape), Some(packing.packing()), None);
    doc.size = Some(packing.len());
    doc.mp_value = Some(mp_value(n, m)?);
    doc.gamma_b = Some(gamma_b);
    doc.optimal_pair = Some(packing.len() == gamma_b);
    doc.method = Some(plan.methods().iter().map(|m| m.name().to_string()).collect());
    Ok(doc)
}

fn construct(n: usize, m: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let doc = construct_document(n, m)?;
    match format {
        Format::Json => writeln!(out, "{}", doc.to_json())?,
        Format::Ascii => {
            let (packing, _) = build_multipacking(n, m)?;
            write!(out, "{}", render_ascii(packing.shape(), &packing.vertices(), None))?;
        }
        Format::Csv => return Err(usage("construct supports --format json or ascii")),
    }
    Ok(EXIT_OK)
}

fn validate(doc: &InstanceDocument, out: &mut dyn Write) -> CmdResult {
    let resolved = doc.resolve()?;
    let universe = resolved.instance.universe();
    let mut ok = true;
    if let Some(p) = &resolved.multipacking {
        let verdict = match resolved.instance.grid() {
            Some(shape) => is_grid_multipacking(shape, p),
            None => is_multipacking(universe, p),
        };
        match verdict {
            Ok(()) => writeln!(out, "multipacking: valid, size {}", p.len())?,
            Err(w) => {
                ok = false;
                writeln!(out, "multipacking: invalid: {}", w.describe(universe))?;
            }
        }
    }
    if let Some(b) = &resolved.broadcast {
        match is_dominating(universe, b) {
            Ok(()) => writeln!(out, "broadcast: valid, cost {}", b.cost())?,
            Err(w) => {
                ok = false;
                writeln!(out, "broadcast: invalid: vertex {} is not dominated", universe.label(w.vertex))?;
            }
        }
    }
    if let (Some(p), Some(b)) = (&resolved.multipacking, &resolved.broadcast) {
        if let Ok(cert) = certify_optimality(universe, p, b) {
            writeln!(out, "certificate: both optimal, value {}", cert.value)?;
        }
    }
    writeln!(out, "{}", if ok { "valid" } else { "invalid" })?;
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn render(doc: &InstanceDocument, out: &mut dyn Write) -> CmdResult {
    let resolved = doc.resolve()?;
    let shape = resolved
        .instance
        .grid()
        .ok_or_else(|| usage("render needs a grid document"))?;
    let members = resolved.multipacking.map(|p| p.vertices(shape)).unwrap_or_default();
    write!(out, "{}", render_ascii(shape, &members, resolved.broadcast.as_ref()))?;
    Ok(EXIT_OK)
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_graph(vertices: usize, seed: u64) -> crate::error::Result<GeneralGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..vertices {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..vertices {
        for b in a + 1..vertices {
            if rng.gen_bool(0.1) && !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
    }
    GeneralGraph::from_edges(vertices, &edges)
}

#[derive(Serialize)]
struct SolveOutput {
    problem: &'static str,
    graph: GraphDescriptor,
    optimum: usize,
    witness: InstanceDocument,
    nodes_explored: u64,
    wall_time_ms: f64,
}

fn solve(family: &str, rest: &[String], cap: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    let (problem, dims) = rest.split_last().expect("clap requires arguments");
    let problem = Problem::from_str(problem, true)
        .map_err(|_| usage(format!("unknown problem {problem:?}; use mp or gammab")))?;
    let dims: Vec<usize> = dims
        .iter()
        .map(|d| d.parse().map_err(|_| usage(format!("bad dimension {d:?}"))))
        .collect::<Result<_, _>>()?;
    let descriptor = match (family, dims.as_slice()) {
        ("grid", &[n, m]) => GraphDescriptor::Grid { n, m },
        ("path", &[n]) => GraphDescriptor::Path { n },
        ("cycle", &[n]) => GraphDescriptor::Cycle { n },
        ("random", &[n]) => {
            let g = random_graph(n, seed)?;
            GraphDescriptor::Edges { vertex_count: n, edges: g.edges() }
        }
        _ => return Err(usage(format!("wrong number of dimensions for {family}"))),
    };
    let instance = descriptor.instance()?;
    let universe = instance.universe();
    let mut witness = InstanceDocument::new(descriptor.clone());
    let (name, optimum, nodes, time) = match problem {
        Problem::Mp => {
            let r = exact_mp(universe, None, cap)?;
            witness.set_witnesses(&instance, Some(&r.witness), None);
            ("mp", r.optimum, r.nodes_explored, r.wall_time)
        }
        Problem::Gammab => {
            let r = exact_gamma_b(universe, cap)?;
            witness.set_witnesses(&instance, None, Some(&r.witness));
            ("gammab", r.optimum, r.nodes_explored, r.wall_time)
        }
    };
    let output = SolveOutput {
        problem: name,
        graph: descriptor,
        optimum,
        witness,
        nodes_explored: nodes,
        wall_time_ms: time.as_secs_f64() * 1e3,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&output).expect("serializable"))?;
    Ok(EXIT_OK)
}

/// One row of the `verify-theorem` table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerifyRow {
    pub n: usize,
    pub m: usize,
    pub size: usize,
    pub expected: usize,
    pub method: String,
    pub certified: bool,
    /// The two grids whose multipacking number is below their radius.
    pub expected_gap: bool,
    pub oracle_mp: Option<usize>,
    pub oracle_gamma_b: Option<usize>,
    pub problems: Vec<String>,
}

pub fn verify_cell(n: usize, m: usize, oracle_cap: usize) -> crate::error::Result<VerifyRow> {
    let shape = GridShape::new(n, m)?;
    let (packing, plan) = build_multipacking(n, m)?;
    let expected = mp_value(n, m)?;
    let expected_gap = (n, m) == (4, 6) || (n, m) == (6, 4);
    let mut problems = Vec::new();
    if let Err(w) = is_grid_multipacking(shape, packing.packing()) {
        problems.push(format!("invalid packing: {}", w.describe(&shape)));
    }
    if packing.len() != expected {
        problems.push(format!("size {} but expected {expected}", packing.len()));
    }
    let certified = certify_optimality(&shape, packing.packing(), &radius_broadcast(&shape)?).is_ok();
    if certified == expected_gap {
        problems.push(format!("certified = {certified} but expected {}", !expected_gap));
    }
    let (mut oracle_mp, mut oracle_gamma_b) = (None, None);
    if n * m <= oracle_cap {
        let report = crosscheck_grid(n, m, oracle_cap)?;
        oracle_mp = Some(report.exact_mp);
        oracle_gamma_b = Some(report.exact_gamma_b);
        problems.extend(report.discrepancies);
    }
    debug_assert!(is_dominating(&shape, &grid_broadcast(shape)).is_ok());
    Ok(VerifyRow {
        n,
        m,
        size: packing.len(),
        expected,
        method: plan.methods().iter().map(|m| m.name()).collect::<Vec<_>>().join("/"),
        certified,
        expected_gap,
        oracle_mp,
        oracle_gamma_b,
        problems,
    })
}

/// All cells `4 <= n <= max_n`, `4 <= m <= max_m` in `(n, m)` order.
pub fn verify_theorem_rows(max_n: usize, max_m: usize, oracle_cap: usize) -> crate::error::Result<Vec<VerifyRow>> {
    let cells: Vec<(usize, usize)> = (4..=max_n).flat_map(|n| (4..=max_m).map(move |m| (n, m))).collect();
    cells.into_par_iter().map(|(n, m)| verify_cell(n, m, oracle_cap)).collect()
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn verify_theorem(
    max_n: usize,
    max_m: usize,
    oracle_cap: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if max_n < 4 || max_m < 4 {
        return Err(usage("verify-theorem bounds must both be at least 4"));
    }
    let rows = verify_theorem_rows(max_n, max_m, oracle_cap)?;
    match format {
        Format::Csv => {
            writeln!(out, "n,m,size,expected,method,certified,expected_gap,oracle_mp,oracle_gamma_b,status")?;
            for r in &rows {
                let status = if r.problems.is_empty() { "ok".to_string() } else { r.problems.join("; ") };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.m,
                    r.size,
                    r.expected,
                    r.method,
                    r.certified,
                    r.expected_gap,
                    opt(r.oracle_mp),
                    opt(r.oracle_gamma_b),
                    status.replace(',', ";")
                )?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?,
        Format::Ascii => return Err(usage("verify-theorem supports --format csv or json")),
    }
    let bad: Vec<&VerifyRow> = rows.iter().filter(|r| !r.problems.is_empty()).collect();
    let gaps = rows.iter().filter(|r| r.expected_gap).count();
    writeln!(
        err,
        "{} cells, {} expected gap cells, {} discrepancies",
        rows.len(),
        gaps,
        bad.len()
    )?;
    for r in &bad {
        writeln!(err, "discrepancy at {}x{}: {}", r.n, r.m, r.problems.join("; "))?;
    }
    Ok(if bad.is_empty() { EXIT_OK } else { EXIT_INVALID })
}
