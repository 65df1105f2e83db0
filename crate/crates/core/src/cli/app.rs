//! Command-line front end. Everything is in-process so tests can drive it.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::multipoly::OrderKind;

use super::fixtures::bundled;
use super::gb::groebner;
use super::render::{render_groebner, render_report};
use super::report::{run, AnalysisReport, Command, RunOptions, DEFAULT_ORBIT_BUDGET};
use super::spec::{parse_spec, parse_spec_str, GroupSpecFile, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "invfield", version, about = "Degree bounds for fields of rational invariants of finite matrix groups")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
struct Flags {
    /// Emit the machine-readable report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_parser = parse_order)]
    term_order: Option<OrderKind>,
    /// Refuse groups with more elements than this.
    #[arg(long, global = true, value_name = "N")]
    element_cap: Option<usize>,
    /// Try a numeric rank at a random point before exact elimination.
    #[arg(long, global = true)]
    fast_rank: bool,
    /// Highest degree for `decompose`; lower bound on the field-generator search.
    #[arg(long, global = true, value_name = "D")]
    max_degree: Option<u32>,
    /// Seconds allowed for the orbit ideal; 0 means no limit.
    #[arg(long, global = true, value_name = "SECS")]
    orbit_budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Spanning degree and a regular-representation witness.
    Dspan { spec: String },
    /// Least degree containing a copy of the regular representation.
    Dreg { spec: String },
    /// Isotypic decomposition degree by degree.
    Decompose { spec: String },
    /// Generic orbit ideal and its generation degree.
    OrbitIdeal { spec: String },
    /// Invariant field generators read off the orbit ideal.
    Generators { spec: String },
    /// Full pipeline with every degree inequality checked.
    Verify { spec: String },
    /// Reduced Groebner basis of polynomial literals.
    Gb {
        /// Comma-separated variable names.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// `z` in the literals is a primitive root of unity of this order.
        #[arg(long, default_value_t = 1)]
        cyclotomic_order: u32,
        #[arg(required = true)]
        polys: Vec<String>,
    },
}

fn parse_order(s: &str) -> std::result::Result<OrderKind, String> {
    s.parse()
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads a description file; a missing path that names a bundled fixture
/// (with or without `.json`) loads the bundled copy.
pub fn load_spec(arg: &str) -> std::result::Result<GroupSpecFile, SpecError> {
    let path = PathBuf::from(arg);
    if path.exists() {
        return parse_spec(&path);
    }
    let stem = Path::new(arg)
        .file_name()
        .and_then(|s| s.to_str())
        .map(|s| s.trim_end_matches(".json"))
        .unwrap_or(arg);
    match bundled(stem) {
        Some(src) => parse_spec_str(src),
        None => parse_spec(&path),
    }
}

fn options(f: &Flags) -> RunOptions {
    RunOptions {
        term_order: f.term_order,
        element_cap: f.element_cap,
        fast_rank: f.fast_rank,
        max_degree: f.max_degree,
        orbit_budget: match f.orbit_budget {
            Some(0) => None,
            Some(s) => Some(Duration::from_secs(s)),
            None => Some(DEFAULT_ORBIT_BUDGET),
        },
    }
}

fn execute(cli: &Cli) -> Result<(String, bool)> {
    let (command, spec) = match &cli.command {
        Sub::Gb {
            vars,
            cyclotomic_order,
            polys,
        } => {
            if *cyclotomic_order == 0 {
                return Err(Error::Internal("cyclotomic order must be positive".into()));
            }
            let kind = cli.flags.term_order.unwrap_or(OrderKind::Grevlex);
            let r = groebner(vars, *cyclotomic_order, kind, polys)?;
            let text = if cli.flags.json {
                serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
            } else {
                render_groebner(&r)
            };
            return Ok((text, true));
        }
        Sub::Dspan { spec } => (Command::Dspan, spec),
        Sub::Dreg { spec } => (Command::Dreg, spec),
        Sub::Decompose { spec } => (Command::Decompose, spec),
        Sub::OrbitIdeal { spec } => (Command::OrbitIdeal, spec),
        Sub::Generators { spec } => (Command::Generators, spec),
        Sub::Verify { spec } => (Command::Verify, spec),
    };
    let spec = load_spec(spec)?;
    let report = run(command, &spec, &options(&cli.flags))?;
    let out = outcome(&report, cli.flags.json);
    Ok((out.stdout, out.code == EXIT_OK))
}

/// Output and exit status for a finished report.
pub fn outcome(report: &AnalysisReport, json: bool) -> Outcome {
    Outcome {
        stdout: if json {
            report.to_json() + "\n"
        } else {
            render_report(report)
        },
        stderr: String::new(),
        code: if report.passed() { EXIT_OK } else { EXIT_VIOLATED },
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_ERROR,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, passed)) => Outcome {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_VIOLATED },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_ERROR,
        },
    }
}
