//! `easum`: evaluate, verify and tabulate Euler-Apery-type series.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod args;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use easum_core::mzv::{closed_form_table, load_table, ClosedFormEntry};
use easum_core::report::{eval_report, EvalReport, ReportError, ReportOptions};
use easum_core::selftest::{self, Check};
use easum_core::series::{table_ids, SeriesId};
use rayon::prelude::*;
use serde::Serialize;

use args::{Cli, Command, EvalArgs, Format, NumericArgs, SelftestArgs, TableArgs};

enum Failure {
    Usage { kind: &'static str, message: String },
    Verification,
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure::Usage { kind: e.kind(), message: e.to_string() }
    }
}

fn usage(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Usage { kind, message: message.into() }
}

#[derive(Serialize)]
struct TableManifest<'a> {
    max_weight: u32,
    count: usize,
    failures: usize,
    reports: &'a [EvalReport],
}

#[derive(Serialize)]
struct SelftestManifest<'a> {
    checks: Vec<CheckRow<'a>>,
    failures: usize,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    name: &'a str,
    passed: bool,
    detail: &'a str,
    seconds: f64,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("reports serialize") + "\n"));
}

fn options<'a>(n: &NumericArgs, verify: bool, table: &'a [ClosedFormEntry]) -> Result<ReportOptions<'a>, Failure> {
    if !(n.precision > 0.0) {
        return Err(usage("usage", "--precision must be positive"));
    }
    if n.n_max == 0 {
        return Err(usage("usage", "--nmax must be positive"));
    }
    Ok(ReportOptions {
        precision: n.precision,
        verify,
        n_max: n.n_max,
        tail: n.tail,
        latex: n.latex,
        table,
    })
}

fn cmd_eval(a: &EvalArgs, format: Format, table: &[ClosedFormEntry]) -> Result<(), Failure> {
    let id = a.series().map_err(|m| usage("usage", m))?;
    let opts = options(&a.numeric, a.verify, table)?;
    let report = eval_report(&id, a.variant, &opts)?;
    match format {
        Format::Json => print_json(&report),
        Format::Text => emit(&render::eval_text(&report, &id.latex())),
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_table(a: &TableArgs, format: Format, table: &[ClosedFormEntry]) -> Result<(), Failure> {
    let opts = options(&a.numeric, !a.no_oracle, table)?;
    let ids: Vec<SeriesId> = table_ids(a.max_weight);
    // par_iter keeps the input order when collecting
    let reports: Vec<EvalReport> = ids
        .par_iter()
        .map(|id| eval_report(id, None, &opts))
        .collect::<Result<_, _>>()?;
    let failures = reports.iter().filter(|r| !r.passed).count();
    match format {
        Format::Json => print_json(&TableManifest {
            max_weight: a.max_weight,
            count: reports.len(),
            failures,
            reports: &reports,
        }),
        Format::Text => emit(&render::table_text(&reports)),
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_selftest(a: &SelftestArgs, format: Format) -> Result<(), Failure> {
    if !(a.precision > 0.0) {
        return Err(usage("usage", "--precision must be positive"));
    }
    let checks: Vec<Check> = selftest::run(a.only, a.precision);
    let failures = checks.iter().filter(|c| !c.passed).count();
    match format {
        Format::Json => {
            let rows: Vec<CheckRow> = checks
                .iter()
                .map(|c| CheckRow {
                    suite: c.suite.name(),
                    name: c.name,
                    passed: c.passed,
                    detail: &c.detail,
                    seconds: c.seconds,
                })
                .collect();
            print_json(&SelftestManifest { checks: rows, failures });
        }
        Format::Text => emit(&render::selftest_text(&checks)),
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let table: Vec<ClosedFormEntry> = match &cli.table {
        Some(path) => load_table(path).map_err(|e| usage("table", e.to_string()))?,
        None => closed_form_table().to_vec(),
    };
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.format, &table),
        Command::Table(a) => cmd_table(a, cli.format, &table),
        Command::Selftest(a) => cmd_selftest(a, cli.format),
    }
}

/// Whether `--format json` appears on the raw command line.
fn json_requested() -> bool {
    let args: Vec<String> = std::env::args().collect();
    args.iter().any(|a| a == "--format=json")
        || args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
}

fn report_usage(json_mode: bool, kind: &str, message: &str) -> ExitCode {
    if json_mode {
        print_json(&ErrorObject { error: ErrorBody { kind, message } });
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() && json_requested() => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default();
            return report_usage(true, "usage", first.trim_start_matches("error: "));
        }
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage { kind, message }) => report_usage(cli.format == Format::Json, kind, &message),
    }
}
