//! `recourse`: solve, generate, verify and validate instances of robust
//! optimization problems with incremental recourse.
//!
//! Exit codes: 0 success, 1 no solution or oracle disagreement, 2 parse or
//! validation error, 3 unsupported combination, 4 enumeration guard, 5
//! numerical failure.

mod check;
mod gadget;
mod report;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use recourse_core::model::format::{InstanceFile, ProblemKind};
use recourse_core::model::{Validate, Violation};
use recourse_core::tolerance::OBJECTIVE_TOL;
use recourse_core::verify::{run_corpus, CorpusOptions};
use recourse_core::Error;

use gadget::{GadgetKind, GadgetParams};
use solve::Problem;

const TOLERANCE_VAR: &str = "RECOURSE_TOLERANCE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("instance is invalid: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{TOLERANCE_VAR} must be a positive number, got {0:?}")]
    Tolerance(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::InvalidInstance(_) | Error::InfeasibleInitialPoint(_) | Error::NotASimplePath(_) => 2,
                Error::Unsupported(_) => 3,
                Error::EnumerationTooLarge { .. } => 4,
                Error::NumericalFailure(_) | Error::CutLoopStalled(_) => 5,
                Error::Infeasible | Error::Unbounded | Error::NoFeasiblePath | Error::Disconnected => 1,
            },
            CliError::Read { .. } | CliError::Invalid(_) | CliError::Tolerance(_) | CliError::Usage(_) => 2,
            CliError::Write { .. } => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "recourse", version, about = "Robust optimization with incremental recourse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print a key/value table instead of JSON.
    #[arg(long)]
    pretty: bool,
    /// Omit wall-clock fields so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a report.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        problem: Problem,
        #[command(flatten)]
        output: Output,
    },
    /// Build a reduction instance from a base graph file.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// Base graph: `terminals` for the path gadgets, `source` and
        /// `sink` with capacities for the interdiction gadget.
        #[arg(long)]
        base: PathBuf,
        /// Flow amount (interdiction).
        #[arg(long)]
        k: Option<u32>,
        /// Number of deletable arcs (interdiction).
        #[arg(long)]
        gamma: Option<usize>,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compare a solver with its brute-force oracle on FILE, or run the
    /// random corpus with --corpus.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        problem: Option<Problem>,
        /// Run the seeded random corpus instead of one file.
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
        /// Corpus criteria to run, 1 to 10.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=10))]
        criteria: Vec<u8>,
        /// Seed of the corpus generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for the corpus.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Check an instance file and list every violated invariant.
    Validate {
        file: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
}

fn read_instance(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(InstanceFile::parse(&text)?)
}

fn tolerance() -> Result<f64, CliError> {
    match std::env::var(TOLERANCE_VAR) {
        Err(_) => Ok(OBJECTIVE_TOL),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(CliError::Tolerance(text)),
        },
    }
}

fn emit<T: Serialize>(report: &T, output: &Output) {
    let mut value = report::to_value(report);
    if output.no_timing {
        report::strip_timing(&mut value);
    }
    print!("{}", report::render(&value, output.pretty));
}

fn millis(start: Instant) -> Option<f64> {
    Some(start.elapsed().as_secs_f64() * 1e3)
}

#[derive(Serialize)]
struct CorpusReport {
    seed: u64,
    jobs: u32,
    passed: bool,
    criteria: Vec<recourse_core::verify::CriterionReport>,
}

#[derive(Serialize)]
struct ValidationReport {
    valid: bool,
    violations: Vec<Violation>,
}

fn validate(path: &Path, pretty: bool) -> Result<ExitCode, CliError> {
    let file = read_instance(path)?;
    let violations = match file.kind {
        ProblemKind::Lp => file.to_lp()?.validate(),
        _ => file.to_network()?.validate(),
    };
    let valid = violations.is_empty();
    let value = report::to_value(&ValidationReport { valid, violations });
    print!("{}", report::render(&value, pretty));
    Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Solve { file, problem, output } => {
            let instance = read_instance(&file)?;
            let start = Instant::now();
            let mut report = solve::solve(&instance, problem)?;
            report.wall_time_ms = millis(start);
            emit(&report, &output);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gadget {
            kind,
            base,
            k,
            gamma,
            output,
        } => {
            let base = read_instance(&base)?;
            let file = gadget::build(kind, &base, &GadgetParams { k, gamma })?;
            let mut text = file.to_json();
            text.push('\n');
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Write { path, source })?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            problem,
            corpus,
            criteria,
            seed,
            jobs,
            output,
        } => {
            if corpus {
                let opts = CorpusOptions {
                    seed,
                    jobs: jobs as usize,
                    criteria: if criteria.is_empty() { (1..=10).collect() } else { criteria },
                };
                let reports = run_corpus(&opts);
                let passed = reports.iter().all(|r| r.passed);
                emit(
                    &CorpusReport {
                        seed,
                        jobs,
                        passed,
                        criteria: reports,
                    },
                    &output,
                );
                return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE });
            }
            let (Some(file), Some(problem)) = (file, problem) else {
                return Err(CliError::Usage("verify needs FILE and --problem, or --corpus".into()));
            };
            let tol = tolerance()?;
            let instance = read_instance(&file)?;
            let start = Instant::now();
            let mut report = check::check(&instance, problem, tol)?;
            report.wall_time_ms = millis(start);
            emit(&report, &output);
            Ok(if report.agree { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Validate { file, pretty } => validate(&file, pretty),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Invalid(violations) = &e {
                for v in violations {
                    eprintln!("  {}: {}", v.code, v.message);
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
