//! `btsolve` command line: gen, solve, verify, bench.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{format_csv, format_table, run_bench};
use crate::error::{Error, Result};
use crate::generators::{generate, Family, FamilySpec};
use crate::report::{run_solve, Method, RunOptions};
use crate::scalar::ScalarMode;
use crate::system::BorderedSystem;
use crate::verify::run_verify;

#[derive(Debug, Parser)]
#[command(name = "btsolve", version, about = "Solvers for bordered tridiagonal linear systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a system file for one of the built-in families.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Ignored by example31 and example32.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Solve a system file and print a report.
    Solve {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long, default_value = "sbtls")]
        method: Method,
        #[arg(long, default_value = "exact")]
        mode: ScalarMode,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Defaults to json when writing to a file, table otherwise.
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
    },
    /// Check sbtls, smw and Bareiss agree on random exact systems.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long = "n-min", default_value_t = 4)]
        n_min: usize,
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Floating-point error/time/flops table across sizes and methods.
    Bench {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "500,1000,5000,10000")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "sbtls,smw,gauss")]
        methods: Vec<Method>,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Table,
    Csv,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Gen { family, n, seed, output } => {
            let n = match (family, n) {
                (Family::Example31, _) => 7,
                (Family::Example32, _) => 10,
                (_, Some(n)) => n,
                (_, None) => return Err(Error::BadSpec(format!("family {family} needs --n"))),
            };
            let sys = generate(&FamilySpec::new(family, n).seed(seed))?;
            sys.write(&output)?;
            writeln!(out, "wrote {family} (n = {}) to {}", sys.n, output.display())?;
            Ok(true)
        }
        Command::Solve { input, method, mode, output, format } => {
            let sys = BorderedSystem::read(&input)?;
            let report = run_solve(&sys, method, mode, &RunOptions::default())?;
            let format = format.unwrap_or(if output.is_some() { ReportFormat::Json } else { ReportFormat::Table });
            let text = match format {
                ReportFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    s
                }
                ReportFormat::Table => report.to_table(),
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Command::Verify { trials, n_min, n_max, seed } => {
            if n_min <= 3 || n_max < n_min {
                return Err(Error::BadSpec(format!(
                    "need 3 < n-min <= n-max, got {n_min}..{n_max}"
                )));
            }
            let summary = run_verify(trials, n_min, n_max, seed)?;
            for line in &summary.failures {
                writeln!(out, "FAIL {line}")?;
            }
            writeln!(out, "passed {} failed {}", summary.passed, summary.failed)?;
            Ok(summary.failed == 0)
        }
        Command::Bench { family, sizes, methods, format } => {
            let rows = run_bench(family, &sizes, &methods)?;
            let text = match format {
                TableFormat::Table => format_table(&rows),
                TableFormat::Csv => format_csv(&rows),
            };
            out.write_all(text.as_bytes())?;
            Ok(true)
        }
    }
}

/// Runs the command line; returns the process exit status.
///
/// 0 on success, 1 on a domain error (or failed verification), 2 on a usage error.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
