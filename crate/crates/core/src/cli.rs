//! The `transversal` command line.
//!
//! Exit codes: 0 success (or a true/affirmative answer), 1 a false or
//! negative answer, 2 unreadable or malformed input, 3 a violated
//! precondition, 4 a resource limit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::formula::{FormulaError, ParseError, Q3dnf};
use crate::graph::{
    enumerate_mis, is_transversal, min_transversal, Graph, GraphError, MinTransversal,
};
use crate::harness::{self, HarnessError};
use crate::normalize::{normalize, NormalizeError};
use crate::reduction::{Reduction, ReductionError};

#[derive(Debug, Parser)]
#[command(
    name = "transversal",
    version,
    about = "Quantified 3-DNF formulas and MIS transversals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide ∃x ∀y φ by exhaustive search.
    Eval { formula: PathBuf },
    /// Rewrite into an equivalent nice monotone formula.
    Normalize {
        formula: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalize, then build the transversal instance (graph plus `k` line).
    Reduce {
        formula: PathBuf,
        /// Write the graph here instead of standard output.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Also write a DOT rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List every maximal independent set, one per line.
    Mis { graph: PathBuf },
    /// Find a lexicographically least minimum transversal.
    MinTransversal {
        graph: PathBuf,
        /// Give up once every transversal is known to exceed this size.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check whether a vertex set meets every maximal independent set.
    Verify {
        graph: PathBuf,
        /// Comma-separated vertex labels or ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
    /// Run the normalize → reduce → solve pipeline and report.
    Roundtrip { formula: PathBuf },
    /// Generate a seeded random formula.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        qn: usize,
        #[arg(long)]
        seed: u64,
        /// Arbitrary polarities instead of a nice monotone formula.
        #[arg(long)]
        plain: bool,
        /// Term count with `--plain`; defaults to q + qn.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every maximal independent set of a graph written by `reduce`.
    Classify { graph: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Precondition(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::TooManyVariables(_) => CliError::Resource(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooManyMis(_) | GraphError::TooManyVertices(_) => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::Formula(e) => e.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Graph(e) => e.into(),
            ReductionError::Formula(e) => e.into(),
            ReductionError::TooLarge(_) => CliError::Resource(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Formula(e) => e.into(),
            HarnessError::Normalize(e) => e.into(),
            HarnessError::Reduction(e) => e.into(),
            HarnessError::Graph(e) => e.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path, e: ParseError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn read_formula(path: &Path) -> Result<Q3dnf, CliError> {
    Q3dnf::parse(&read(path)?).map_err(|e| parse_error(path, e))
}

fn read_graph(path: &Path) -> Result<(Graph, Option<usize>), CliError> {
    Graph::parse(&read(path)?).map_err(|e| parse_error(path, e))
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes to `path` if given, else to `out`.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_to(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { formula } => {
            let e = read_formula(&formula)?.evaluate()?;
            match e.witness {
                Some(w) if e.holds => writeln!(out, "TRUE x={}", w.bit_string())?,
                _ => writeln!(out, "FALSE")?,
            }
            Ok(if e.holds { 0 } else { 1 })
        }
        Command::Normalize { formula, out: path } => {
            let f = normalize(&read_formula(&formula)?)?;
            emit(out, path.as_deref(), &f.to_text())?;
            Ok(0)
        }
        Command::Reduce {
            formula,
            graph,
            dot,
        } => {
            let red = Reduction::build(&normalize(&read_formula(&formula)?)?)?;
            emit(out, graph.as_deref(), &red.to_text())?;
            if let Some(p) = dot {
                write_to(&p, &red.to_dot())?;
            }
            Ok(0)
        }
        Command::Mis { graph } => {
            let (g, _) = read_graph(&graph)?;
            for s in enumerate_mis(&g)? {
                writeln!(out, "{}", g.format_set(&s))?;
            }
            Ok(0)
        }
        Command::MinTransversal { graph, limit } => {
            let (g, _) = read_graph(&graph)?;
            match min_transversal(&g, limit)? {
                MinTransversal::Found(s) => {
                    writeln!(out, "size: {}", s.len())?;
                    writeln!(out, "set: {}", g.format_set(&s))?;
                    Ok(0)
                }
                MinTransversal::ExceedsLimit(_) | MinTransversal::Impossible => {
                    writeln!(out, "INFEASIBLE-WITHIN-LIMIT")?;
                    Ok(1)
                }
            }
        }
        Command::Verify { graph, set } => {
            let (g, _) = read_graph(&graph)?;
            let x = g
                .parse_set(set.iter().map(String::as_str))
                .map_err(CliError::Precondition)?;
            let check = is_transversal(&g, &x)?;
            match check.counterexample {
                None => {
                    writeln!(out, "TRANSVERSAL")?;
                    Ok(0)
                }
                Some(c) => {
                    writeln!(out, "NOT-TRANSVERSAL")?;
                    writeln!(out, "{}", g.format_set(&c))?;
                    Ok(1)
                }
            }
        }
        Command::Roundtrip { formula } => {
            let report = harness::round_trip(&read_formula(&formula)?)?;
            out.write_all(report.to_text().as_bytes())?;
            Ok(if report.consistent { 0 } else { 1 })
        }
        Command::Gen {
            n,
            m,
            q,
            qn,
            seed,
            plain,
            terms,
            out: path,
        } => {
            let f = if plain {
                harness::gen_q3dnf(n, m, terms.unwrap_or(q + qn), seed)?
            } else {
                if terms.is_some() {
                    return Err(CliError::Precondition(
                        "--terms only applies with --plain".into(),
                    ));
                }
                harness::gen_nice_monotone(n, m, q, qn, seed)?
            };
            emit(out, path.as_deref(), &f.to_text())?;
            Ok(0)
        }
        Command::Classify { graph } => {
            let (g, _) = read_graph(&graph)?;
            let red = Reduction::from_graph(&g)?;
            let audit = harness::classification_audit(&red)?;
            out.write_all(audit.to_report(red.graph()).as_bytes())?;
            Ok(if audit.passed() { 0 } else { 1 })
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{rendered}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
