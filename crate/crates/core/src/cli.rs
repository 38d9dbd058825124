//! Command-line driver: `validate`, `straighten`, `normalize`, `verify`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::document::{
    load_problem, read_to_string, render_result, render_straightened, to_json, ReportDoc, ResultDoc, StraightenDoc,
    ValidationDoc,
};
use crate::error::{Error, Result};
use crate::lie::{validate_input, ValidationReport};
use crate::normal_form::{normalize_full, NormalizeOptions};
use crate::straighten::straighten;

pub const VERIFICATION_FORMAT: &str = "lienf-verification/1";

#[derive(Parser, Debug)]
#[command(name = "lienf", version, about = "Exact normal forms of nonlinear Lie algebra representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the hypotheses on a problem document.
    Validate(CommonArgs),
    /// Straighten the abelian ideal.
    Straighten(CommonArgs),
    /// Run the full normalization.
    Normalize(CommonArgs),
    /// Re-certify a result document.
    Verify(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Overrides the truncation degree of the problem.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Coordinate bound of the resonance vector search.
    #[arg(long, default_value_t = 16)]
    max_search_box: usize,
    /// Metadata stored outside the canonical payload.
    #[arg(long)]
    stamp: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    stage: Option<&'static str>,
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorDoc {
    error: ErrorBody,
}

fn error_doc(e: &Error) -> ErrorDoc {
    let stage = match e {
        Error::Stage { stage, .. } => Some(*stage),
        _ => None,
    };
    ErrorDoc { error: ErrorBody { kind: e.kind(), stage, message: e.root().to_string(), exit_code: e.exit_code() } }
}

/// What a subcommand produced: rendered output and its exit code.
struct Outcome {
    text: String,
    code: i32,
}

fn emit<T: Serialize>(format: Format, doc: &T, text: impl FnOnce() -> String, code: i32) -> Result<Outcome> {
    let text = match format {
        Format::Json => to_json(doc)?,
        Format::Text => text(),
    };
    Ok(Outcome { text, code })
}

fn report_outcome(format: Format, doc: &ValidationDoc, report: &ValidationReport, fail_code: i32) -> Result<Outcome> {
    let code = if report.passed() { 0 } else { fail_code };
    emit(format, doc, || report.render(), code)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    let (Command::Validate(a) | Command::Straighten(a) | Command::Normalize(a) | Command::Verify(a)) = cmd;
    let text = read_to_string(&a.input)?;
    if let Command::Verify(_) = cmd {
        let doc: ResultDoc = serde_json::from_str(&text)?;
        let report = doc.verify()?;
        let out = ValidationDoc {
            format: VERIFICATION_FORMAT.to_string(),
            input_hash: doc.input_hash.clone(),
            passed: report.passed(),
            report: ReportDoc::new(&report),
            stamp: a.stamp.clone(),
        };
        return report_outcome(a.format, &out, &report, 4);
    }
    let (problem, pdoc) = load_problem(&text, a.degree)?;
    match cmd {
        Command::Validate(_) => {
            let report = validate_input(&problem.algebra, &problem.decomposition, &problem.rep);
            let mut doc = ValidationDoc::new(&pdoc, &report);
            doc.stamp = a.stamp.clone();
            report_outcome(a.format, &doc, &report, 2)
        }
        Command::Straighten(_) => {
            let report = validate_input(&problem.algebra, &problem.decomposition, &problem.rep);
            if !report.passed() {
                return Err(Error::Validation(Box::new(report)).in_stage("validate"));
            }
            let st = straighten(&problem.rep, &problem.decomposition).map_err(|e| e.in_stage("straighten"))?;
            let mut doc = StraightenDoc::new(&pdoc, &problem.algebra, &st);
            doc.stamp = a.stamp.clone();
            emit(a.format, &doc, || render_straightened(&problem.algebra, &st), 0)
        }
        Command::Normalize(_) => {
            let opts = NormalizeOptions { max_search_box: a.max_search_box };
            let r = normalize_full(&problem, &opts)?;
            let mut doc = ResultDoc::new(&pdoc, &problem.algebra, &r);
            doc.stamp = a.stamp.clone();
            emit(a.format, &doc, || render_result(&problem.algebra, &r), 0)
        }
        Command::Verify(_) => unreachable!("handled above"),
    }
}

fn write_out(path: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code. Errors are written as a machine-readable object in the
/// chosen format.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 5 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (Command::Validate(args) | Command::Straighten(args) | Command::Normalize(args) | Command::Verify(args)) =
        &cli.command;
    let result = execute(&cli.command).and_then(|o| write_out(args.output.as_ref(), &o.text, stdout).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            let text = match args.format {
                Format::Json => to_json(&error_doc(&e)).unwrap_or_else(|_| format!("{e}\n")),
                Format::Text => format!("error [{}]: {e}\n", e.kind()),
            };
            if write_out(args.output.as_ref(), &text, stdout).is_err() {
                let _ = stderr.write_all(text.as_bytes());
            }
            e.exit_code()
        }
    }
}

/// [`run_with`] on the process streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut out, &mut err)
}

/// Hash of a problem document as recorded in emitted documents.
pub fn problem_hash(text: &str, degree: Option<usize>) -> Result<String> {
    Ok(load_problem(text, degree)?.1.hash())
}
