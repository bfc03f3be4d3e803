//! Command-line front end: configuration, report generation and exit codes.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use config::{Command, Overrides, RunConfig};
use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "swalg",
    version,
    about = "Symbolic and numerical checks for the Smorodinsky-Winternitz system"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify the operator relations symbolically.
    Verify(CommonArgs),
    /// Derive the spectrum by every route and cross-check the structure functions.
    Derive(CommonArgs),
    /// Finite-difference and residual checks of the separated solutions.
    Numcheck(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the dimension in the config.
    #[arg(long)]
    n: Option<usize>,
    /// Use exact rational arithmetic where the parameters allow it.
    #[arg(long)]
    exact: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(passed) => {
            if passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("swalg: {e}");
            EXIT_USAGE
        }
    }
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("SWALG_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("SWALG_THREADS: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(CliError::Usage(format!(
                "SWALG_THREADS = {v:?} is not a positive integer"
            ))),
        },
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let (command, args) = match cli.command {
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Derive(a) => (Command::Derive, a),
        Cmd::Numcheck(a) => (Command::Numcheck, a),
    };
    let cfg = RunConfig::load(&args.config, command, &Overrides { n: args.n })?;
    let report = match thread_cap()? {
        None => build_report(command, &cfg, args.exact),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
            .install(|| build_report(command, &cfg, args.exact)),
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.passed())
}

/// Runs one command on a validated config.
pub fn build_report(command: Command, cfg: &RunConfig, exact: bool) -> Report {
    let start = Instant::now();
    let mut notes = cfg.notes.clone();
    let mode = match command {
        Command::Verify => {
            if !cfg.a.is_empty() || cfg.b.is_some() {
                notes.push(
                    "verify works over symbolic parameters; numeric a and b are not used".into(),
                );
            }
            "symbolic".to_string()
        }
        Command::Derive => match (exact, cfg.exact_params()) {
            (true, Ok(_)) => "exact".to_string(),
            (true, Err(why)) => {
                notes.push(format!(
                    "exact mode unavailable ({why}); using floating point"
                ));
                "float".to_string()
            }
            (false, _) => "float".to_string(),
        },
        Command::Numcheck => {
            if exact {
                notes.push("numcheck is floating-point only; --exact ignored".into());
            }
            "float".to_string()
        }
    };
    if let Some(f) = &cfg.fault {
        notes.push(format!("fault injected into {}", f.label()));
    }
    let mut report = Report::new(command.name(), config_echo(cfg), &mode, notes);
    match command {
        Command::Verify => commands::verify::run(cfg, &mut report),
        Command::Derive => {
            if mode == "exact" {
                let (a, s) = cfg.exact_params().expect("checked above");
                commands::derive::run(cfg, a, s, &mut report);
            } else {
                let s = cfg.s.as_ref().expect("validated").value;
                commands::derive::run(cfg, cfg.a_f64(), s, &mut report);
            }
        }
        Command::Numcheck => commands::numcheck::run(cfg, &mut report),
    }
    if cfg.timings {
        report.timing = Some(json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 }));
    }
    report.finish();
    report
}

fn config_echo(cfg: &RunConfig) -> serde_json::Value {
    let t = &cfg.tolerances;
    json!({
        "n": cfg.n,
        "a": cfg.a.iter().map(|p| p.text()).collect::<Vec<_>>(),
        "b": cfg.b.as_ref().map(|p| p.text()),
        "s": cfg.s.as_ref().map(|p| p.text()),
        "branches": cfg.branches,
        "suites": cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "coverage": cfg.coverage,
        "cutoffs": { "n_max": cfg.n_max, "p_max": cfg.p_max },
        "grid": cfg.grid,
        "tolerances": {
            "eigen_rel": report::num(t.eigen_rel),
            "ratio_min": report::num(t.ratio_min),
            "ratio_max": report::num(t.ratio_max),
            "residual": report::num(t.residual),
            "rayleigh": report::num(t.rayleigh),
            "spectrum_rel": report::num(t.spectrum_rel),
            "proportionality": report::num(t.proportionality),
            "root": report::num(t.root),
        },
        "numeric": { "levels": cfg.levels, "samples": cfg.samples },
        "fault": cfg.fault.as_ref().map(|f| f.label()),
    })
}
