use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coldual::harness::config::{parse_points, RawConfig};
use coldual::harness::{parse_expression, run_suite};
use coldual::{Error, Model, ParamPoint};

/// Exit status when any check fails.
const EXIT_FAIL: u8 = 1;
/// Exit status for configuration, parse and I/O errors.
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "coldual", version, about = "Numerical checks for coloured quantum groups and their duals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites; exits 0 iff every check passes.
    Verify(VerifyArgs),
    /// Reduce an element expression to normal form.
    Eval(EvalArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// gl2 or gl11.
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated suites, or `all`.
    #[arg(long, alias = "suites")]
    suite: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Truncation order N.
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// Comma-separated nonzero rationals, e.g. "1,2,-1,1/2".
    #[arg(long, alias = "colors", allow_hyphen_values = true)]
    colours: Option<String>,
    /// Explicit points "theta=..,phi=..; ..." replacing the sampled ones.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// Write the JSON-lines report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, default_value = "gl2")]
    model: String,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// "theta=..,phi=.."
    #[arg(long, default_value = "theta=0.5,phi=0.25", allow_hyphen_values = true)]
    point: String,
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_ERROR)
}

fn verify(a: VerifyArgs) -> ExitCode {
    let mut raw = match &a.config {
        Some(p) => match fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display()))).and_then(|t| RawConfig::parse(&t)) {
            Ok(r) => r,
            Err(e) => return fail(e),
        },
        None => RawConfig::default(),
    };
    let flags = [
        ("model", &a.model),
        ("suite", &a.suite),
        ("samples", &a.samples),
        ("seed", &a.seed),
        ("order", &a.order),
        ("tol", &a.tol),
        ("colours", &a.colours),
        ("params", &a.params),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            raw.set(k, v);
        }
    }
    if let Some(p) = &a.report {
        raw.set("report", &p.to_string_lossy());
    }
    let cfg = match raw.build() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let written = match raw.get("report") {
        Some(path) => fs::File::create(path)
            .map_err(|e| Error::Io(format!("{path}: {e}")))
            .and_then(|mut f| report.emit(&mut f))
            .and_then(|_| io::stdout().write_all(report.summary().as_bytes()).map_err(|e| Error::Io(e.to_string()))),
        None => report.emit(&mut io::stdout().lock()),
    };
    if let Err(e) = written {
        return fail(e);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn eval(a: EvalArgs) -> ExitCode {
    let model: Model = match a.model.parse() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let pt = match parse_points(&a.point) {
        Ok(v) if v.len() == 1 => ParamPoint::new(model, v[0].theta, v[0].phi),
        Ok(_) => return fail("--point takes exactly one theta=..,phi=.. pair"),
        Err(e) => return fail(e),
    };
    match parse_expression(&a.expr, &pt) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Eval(a) => eval(a),
    }
}
