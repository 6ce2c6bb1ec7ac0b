use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cograph::oracle::OracleBudget;
use cograph::rational::parse_rational;
use cograph::{Graph, Rational};

mod bench;
mod check;
mod commands;
mod report;

use report::{Input, RunReport};

/// Sparse/dense extraction and partitioning in cographs.
#[derive(Parser, Debug)]
#[command(name = "cograph", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Graph file in the text format; standard input when omitted.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Pattern graph file.
    #[arg(long, global = true)]
    pattern: Option<PathBuf>,
    /// Epsilon as `p/q`, an integer or an exact decimal.
    #[arg(long, global = true, value_parser = rational_arg)]
    eps: Option<Rational>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output kind, optionally followed by a file to write it to.
    #[arg(long, global = true, num_args = 1..=2, value_names = ["KIND", "PATH"])]
    emit: Vec<String>,
    /// Vertex budget for the exhaustive oracles.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads; the rayon default when omitted.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph.
    Gen(commands::GenArgs),
    /// Recognize a cograph and print its cotree.
    Cotree,
    /// Extract a sparse or dense set from a cograph.
    Extract(commands::ExtractArgs),
    /// Partition a cograph into restricted sets, or run one pipeline stage.
    Partition(commands::PartitionArgs),
    /// Split a cograph into a thin set and a thick set.
    ThinThick,
    /// Count induced copies of a pattern.
    Count,
    /// Decide a side of the viral disjunction.
    Viral(commands::ViralArgs),
    /// Exhaustive reference computations on small graphs.
    Oracle(commands::OracleArgs),
    /// Check a partition file against a graph.
    Verify(commands::VerifyArgs),
    /// Run a benchmark suite and write CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmitKind {
    Text,
    Json,
    Parts,
    Certificates,
    Report,
    Verdict,
}

struct Emit {
    kind: EmitKind,
    path: Option<PathBuf>,
}

fn parse_emit(values: &[String]) -> Result<Emit, String> {
    match values {
        [] => Ok(Emit {
            kind: EmitKind::Text,
            path: None,
        }),
        [kind, rest @ ..] => Ok(Emit {
            kind: EmitKind::from_str(kind, true).map_err(|_| {
                format!("invalid --emit kind {kind:?}; expected text, json, parts, certificates, report or verdict")
            })?,
            path: rest.first().map(PathBuf::from),
        }),
    }
}

/// Shared state handed to every command.
pub struct Ctx {
    pub global: Global,
    pub report: RunReport,
}

impl Ctx {
    fn read(&mut self, role: &'static str, path: Option<&PathBuf>) -> Result<String, String> {
        let (label, bytes) = match path {
            Some(p) => (
                p.display().to_string(),
                fs::read(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?,
            ),
            None => {
                let mut buf = Vec::new();
                io::stdin().read_to_end(&mut buf).map_err(|e| format!("cannot read stdin: {e}"))?;
                ("-".to_owned(), buf)
            }
        };
        self.report.inputs.push(Input::new(role, &label, &bytes));
        String::from_utf8(bytes).map_err(|_| format!("{label} is not UTF-8"))
    }

    pub fn graph(&mut self) -> Result<Graph, Failure> {
        let path = self.global.graph.clone();
        let text = self.read("graph", path.as_ref())?;
        Ok(cograph::parse_graph(&text).map_err(|e| format!("graph: {e}"))?)
    }

    pub fn pattern(&mut self) -> Result<Graph, Failure> {
        let path = self.global.pattern.clone().ok_or_else(|| usage("--pattern is required"))?;
        let text = self.read("pattern", Some(&path))?;
        Ok(cograph::parse_graph(&text).map_err(|e| format!("pattern: {e}"))?)
    }

    pub fn file(&mut self, role: &'static str, path: &PathBuf) -> Result<String, Failure> {
        Ok(self.read(role, Some(path))?)
    }

    pub fn eps(&self) -> Result<Rational, Failure> {
        self.global.eps.clone().ok_or_else(|| usage("--eps is required"))
    }

    pub fn budget(&self) -> OracleBudget {
        let mut b = OracleBudget::default();
        if let Some(n) = self.global.budget {
            b.max_vertices_subset = n;
            b.max_vertices_partition = n;
            b.max_vertices_count = n;
        }
        b
    }
}

pub enum Failure {
    /// Bad or missing arguments; exit 2.
    Usage(String),
    /// The command could not finish; recorded as a failed check.
    Run(String),
}

impl From<String> for Failure {
    fn from(msg: String) -> Failure {
        Failure::Run(msg)
    }
}

impl From<cograph::Error> for Failure {
    fn from(e: cograph::Error) -> Failure {
        match e {
            cograph::Error::InvalidInput(msg) => Failure::Usage(msg),
            e => Failure::Run(e.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn run(cli: Cli, argv: Vec<String>) -> Result<bool, Failure> {
    let emit = parse_emit(&cli.global.emit).map_err(Failure::Usage)?;
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Run(e.to_string()))?;
    }
    let mut ctx = Ctx {
        global: cli.global,
        report: RunReport::new(argv),
    };
    // gen and bench print their payload on stdout, so checks go to stderr
    let payload_on_stdout = matches!(cli.command, Command::Gen(_) | Command::Bench(_));
    let outcome = match &cli.command {
        Command::Gen(a) => commands::gen(&mut ctx, a),
        Command::Cotree => commands::cotree(&mut ctx),
        Command::Extract(a) => commands::extract(&mut ctx, a),
        Command::Partition(a) => commands::partition(&mut ctx, a),
        Command::ThinThick => commands::thin_thick(&mut ctx),
        Command::Count => commands::count(&mut ctx),
        Command::Viral(a) => commands::viral(&mut ctx, a),
        Command::Oracle(a) => commands::oracle(&mut ctx, a),
        Command::Verify(a) => commands::verify(&mut ctx, a),
        Command::Bench(a) => bench::bench(&mut ctx, a),
    };
    match outcome {
        Ok(()) => {}
        Err(Failure::Usage(msg)) => return Err(Failure::Usage(msg)),
        Err(Failure::Run(msg)) => ctx.report.check("run", Err(msg)),
    }
    let report = &ctx.report;
    let (body, summary) = match emit.kind {
        EmitKind::Json => (report.to_json(), None),
        EmitKind::Parts => (report.to_text(false), None),
        EmitKind::Report => (checks_only(report), None),
        _ if payload_on_stdout => (report.to_text(false), Some(checks_only(report))),
        _ => (report.to_text(true), None),
    };
    match &emit.path {
        Some(path) => {
            fs::write(path, &body).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))?;
            if emit.kind == EmitKind::Json {
                let human = if payload_on_stdout { report.to_text(false) } else { report.to_text(true) };
                print_stdout(&human);
            }
        }
        None => print_stdout(&body),
    }
    if let Some(s) = summary {
        eprint!("{s}");
    }
    Ok(report.pass())
}

fn checks_only(report: &RunReport) -> String {
    let mut r = RunReport::new(Vec::new());
    r.checks = report
        .checks
        .iter()
        .map(|c| report::Check {
            name: c.name.clone(),
            pass: c.pass,
            detail: c.detail.clone(),
        })
        .collect();
    r.to_text(true)
}

fn print_stdout(s: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe downstream is not an error worth reporting
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = run(cli, argv.into_iter().skip(1).collect());
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
