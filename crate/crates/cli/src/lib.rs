//! The `qwalk` command-line tool: graph generation, walk construction,
//! periodicity analysis, exhaustive scanning and structural checks.
//!
//! Structured output is JSON Lines; `--pretty` switches to text tables.

pub mod input;
pub mod pretty;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qwalk_core::periodicity::{trace_test, DEFAULT_CAP, DEFAULT_TRACE_K};
use qwalk_core::scan::MAX_SCAN_EDGES;
use qwalk_core::spectral::orthogonal_spectrum;
use qwalk_core::{
    analyze, block_identity_check, build_bipartite_walk, build_grover_walk, enumerate_biregular, graph_hash,
    grover_equals_bipartite_on_subdivision, walk_phases_from_graph, AnalysisOptions, AnalysisReport,
    ArcWalkOperator, EigenphaseSet, Expectation, Graph, Method, Periodicity, ScanEntry, Transform, WalkKind,
    WalkOperator,
};

pub mod exit {
    pub const PERIODIC: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NON_PERIODIC: i32 = 3;
    pub const INCONCLUSIVE: i32 = 4;
    pub const DISAGREEMENT: i32 = 5;
}

/// Largest `k` checked by `verify` for the block identity.
pub const VERIFY_BLOCK_K: u64 = 4;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Periodicity of bipartite and Grover quantum walks")]
pub struct Cli {
    /// Print human-readable tables instead of JSON Lines.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "b", alias = "bipartite")]
    Bipartite,
    #[value(name = "g", alias = "grover")]
    Grover,
}

impl From<KindArg> for WalkKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Bipartite => WalkKind::Bipartite,
            KindArg::Grover => WalkKind::Grover,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    None,
    #[value(name = "s", alias = "subdivide")]
    Subdivide,
    #[value(name = "d", aliases = ["doublecover", "double-cover"])]
    DoubleCover,
}

impl From<TransformArg> for Transform {
    fn from(t: TransformArg) -> Self {
        match t {
            TransformArg::None => Transform::None,
            TransformArg::Subdivide => Transform::Subdivide,
            TransformArg::DoubleCover => Transform::DoubleCover,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Spectral,
    Phases,
    Trace,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Phases => Method::Phases,
            MethodArg::Trace => Method::Trace,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct WalkArgs {
    /// Edge-list file, `-` for standard input, or a graph name such as
    /// `figure1`, `k23`, `c6`, `circulant:10:1,4`.
    pub input: String,
    #[arg(long, short, value_enum, default_value = "b")]
    pub kind: KindArg,
    #[arg(long, short, value_enum, default_value = "none")]
    pub transform: TransformArg,
}

#[derive(Debug, Clone, clap::Args)]
pub struct AnalysisArgs {
    /// Largest power tried by the exact oracle.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Methods to run (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub methods: Vec<MethodArg>,
    /// Powers checked by the trace test.
    #[arg(long, default_value_t = DEFAULT_TRACE_K)]
    pub trace_k: u64,
    /// Skip the cyclotomic factorization screen in the oracle.
    #[arg(long)]
    pub no_screen: bool,
}

impl AnalysisArgs {
    pub fn options(&self) -> AnalysisOptions {
        let methods: BTreeSet<Method> = if self.methods.is_empty() {
            Method::ALL.into_iter().collect()
        } else {
            self.methods.iter().map(|&m| m.into()).collect()
        };
        AnalysisOptions {
            methods,
            cap: self.cap,
            trace_k: self.trace_k,
            screen: !self.no_screen,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the edge list of a graph family member.
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Build a walk operator and print it.
    Walk(WalkArgs),
    /// Decide periodicity of a walk.
    Period {
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// Record a comparison against this period in the report.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Analyze every connected biregular bipartite graph up to an edge bound.
    Scan {
        #[arg(long)]
        max_edges: usize,
        /// Only report periodic graphs.
        #[arg(long)]
        periodic_only: bool,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Check the Grover/subdivision equality and the block identity.
    Verify { input: String },
}

/// A serialized walk operator together with where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkDocument {
    pub input: String,
    pub graph_hash: String,
    pub transform: Transform,
    #[serde(flatten)]
    pub operator: OperatorDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "operator", rename_all = "snake_case")]
pub enum OperatorDoc {
    Bipartite(WalkOperator),
    Grover(ArcWalkOperator),
}

impl OperatorDoc {
    pub fn dim(&self) -> usize {
        match self {
            OperatorDoc::Bipartite(w) => w.dim(),
            OperatorDoc::Grover(w) => w.dim(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub k: u64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub input: String,
    pub graph_hash: String,
    pub vertices: usize,
    pub edges: usize,
    pub grover_subdivision: bool,
    /// Empty when the graph is not bipartite.
    pub block_identity: Vec<BlockCheck>,
    pub passed: bool,
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let line = serde_json::to_string(value)?;
    writeln!(out, "{line}")?;
    Ok(())
}

pub fn build_walk(input: &str, g: &Graph, kind: WalkKind, transform: Transform) -> Result<WalkDocument> {
    let g = transform.apply(g)?;
    let operator = match kind {
        WalkKind::Bipartite => OperatorDoc::Bipartite(build_bipartite_walk(&g)?),
        WalkKind::Grover => OperatorDoc::Grover(build_grover_walk(&g)?),
    };
    Ok(WalkDocument {
        input: input.to_string(),
        graph_hash: graph_hash(&g),
        transform,
        operator,
    })
}

/// Walk spectrum: exact cosines from the graph when it is biregular and the
/// walk is bipartite, otherwise read numerically off the operator.
pub fn walk_spectrum(g: &Graph, kind: WalkKind) -> Result<EigenphaseSet> {
    Ok(match kind {
        WalkKind::Bipartite => match walk_phases_from_graph(g) {
            Ok(s) => s,
            Err(_) => orthogonal_spectrum(&build_bipartite_walk(g)?.u)?,
        },
        WalkKind::Grover => orthogonal_spectrum(&build_grover_walk(g)?.u)?,
    })
}

/// Runs the analysis on the transformed graph and packages the report.
pub fn period_report(
    input: &str,
    g: &Graph,
    kind: WalkKind,
    transform: Transform,
    opts: &AnalysisOptions,
    expect: Option<u64>,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let g = transform.apply(g)?;
    let verdict = analyze(&g, kind, opts)?;
    let spectrum = walk_spectrum(&g, kind)?;
    let dimension = match kind {
        WalkKind::Bipartite => g.edge_count(),
        WalkKind::Grover => 2 * g.edge_count(),
    };
    Ok(AnalysisReport {
        input: input.to_string(),
        graph_hash: graph_hash(&g),
        vertices: g.n(),
        edges: g.edge_count(),
        kind,
        transform,
        dimension,
        spectrum: Some(spectrum),
        expected: expect.map(|p| Expectation::compare(p, &verdict)),
        verdict,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn exit_code(report: &AnalysisReport) -> i32 {
    if report.verdict.disagreement {
        return exit::DISAGREEMENT;
    }
    match report.verdict.periodic {
        Periodicity::Periodic => exit::PERIODIC,
        Periodicity::NonPeriodic => exit::NON_PERIODIC,
        Periodicity::Inconclusive => exit::INCONCLUSIVE,
    }
}

pub fn scan_input(e: &ScanEntry, index: usize) -> String {
    format!("scan:{}x{}:{}-{}#{index}", e.a, e.b, e.d_a, e.d_b)
}

/// Scan analysis of one graph: the trace test runs first, and a failure
/// drops the oracle since non-periodicity is already certified.
pub fn scan_report(e: &ScanEntry, index: usize, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let u = build_bipartite_walk(&e.graph)?.u;
    let mut local = opts.clone();
    if !trace_test(&u, opts.trace_k)?.passed() {
        local.methods.remove(&Method::Oracle);
        local.methods.insert(Method::Trace);
    }
    period_report(
        &scan_input(e, index),
        &e.graph,
        WalkKind::Bipartite,
        Transform::None,
        &local,
        None,
    )
}

pub fn verify(input: &str, g: &Graph) -> Result<VerifyReport> {
    let grover_subdivision = grover_equals_bipartite_on_subdivision(g)?.equal;
    let block_identity = if g.is_bipartite() {
        (1..=VERIFY_BLOCK_K)
            .map(|k| Ok(BlockCheck { k, passed: block_identity_check(g, k)? }))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let passed = grover_subdivision && block_identity.iter().all(|b| b.passed);
    Ok(VerifyReport {
        input: input.to_string(),
        graph_hash: graph_hash(g),
        vertices: g.n(),
        edges: g.edge_count(),
        grover_subdivision,
        block_identity,
        passed,
    })
}

fn execute(cli: Cli, io: &mut Io) -> Result<i32> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Gen { family, params } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            let g = input::generate(&family, &params)?;
            write!(io.stdout, "{}", g.to_edge_list())?;
            Ok(0)
        }
        Command::Walk(w) => {
            let g = input::resolve(&w.input, io.stdin)?;
            let doc = build_walk(&w.input, &g, w.kind.into(), w.transform.into())?;
            if pretty {
                pretty::walk(io.stdout, &doc)?;
            } else {
                emit(io.stdout, &doc)?;
            }
            Ok(0)
        }
        Command::Period { walk, analysis, expect } => {
            let g = input::resolve(&walk.input, io.stdin)?;
            let report = period_report(
                &walk.input,
                &g,
                walk.kind.into(),
                walk.transform.into(),
                &analysis.options(),
                expect,
            )?;
            if pretty {
                pretty::report(io.stdout, &report)?;
            } else {
                emit(io.stdout, &report)?;
            }
            if report.verdict.disagreement {
                writeln!(io.stderr, "error: analysis methods disagree on {}", report.input)?;
                for note in &report.verdict.notes {
                    writeln!(io.stderr, "  {note}")?;
                }
                writeln!(io.stderr, "{}", serde_json::to_string_pretty(&report.verdict.evidence)?)?;
            }
            Ok(exit_code(&report))
        }
        Command::Scan { max_edges, periodic_only, analysis } => {
            if max_edges > MAX_SCAN_EDGES {
                bail!("--max-edges {max_edges} exceeds the exhaustive bound {MAX_SCAN_EDGES}");
            }
            let opts = analysis.options();
            let entries = enumerate_biregular(max_edges)?;
            let reports = entries
                .par_iter()
                .enumerate()
                .map(|(i, e)| scan_report(e, i, &opts))
                .collect::<Result<Vec<_>>>()?;
            let shown: Vec<&AnalysisReport> = reports
                .iter()
                .filter(|r| !periodic_only || r.verdict.periodic == Periodicity::Periodic)
                .collect();
            if pretty {
                pretty::scan(io.stdout, &shown)?;
            } else {
                for r in &shown {
                    emit(io.stdout, r)?;
                }
            }
            let disagreements = reports.iter().filter(|r| r.verdict.disagreement).count();
            if disagreements > 0 {
                writeln!(io.stderr, "error: {disagreements} graph(s) with disagreeing methods")?;
                return Ok(exit::DISAGREEMENT);
            }
            Ok(0)
        }
        Command::Verify { input: spec } => {
            let g = input::resolve(&spec, io.stdin)?;
            let report = verify(&spec, &g)?;
            if pretty {
                pretty::verify(io.stdout, &report)?;
            } else {
                emit(io.stdout, &report)?;
            }
            Ok(if report.passed { 0 } else { exit::DISAGREEMENT })
        }
    }
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn run<I, T>(args: I, io: &mut Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            let (code, sink): (i32, &mut dyn Write) =
                if e.use_stderr() { (exit::USAGE, io.stderr) } else { (0, io.stdout) };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli, io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e:#}");
            exit::USAGE
        }
    }
}
