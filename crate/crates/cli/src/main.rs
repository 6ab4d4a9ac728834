//! `syncstr`: construct and verify synchronization strings, benchmark the
//! indexing decoders against adversarial channels and run end-to-end
//! insertion/deletion code trials.
//!
//! Exit codes: 0 on success, 1 when a property or bound is violated (or a
//! run fails outright), 2 on usage errors.

mod bench;
mod demo;
mod report;
mod strings_cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use syncstr::construction::{AlphabetPlan, SyncProperty};
use syncstr::Rational;

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "syncstr", version, about = "Synchronization strings and insertion/deletion codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a certified string and write it to a file.
    Construct(strings_cmd::ConstructArgs),
    /// Check a string file for a property; exits 1 with a witness on failure.
    Verify(strings_cmd::VerifyArgs),
    /// Run an indexing decoder against an adversarial channel.
    BenchIndexing(bench::BenchArgs),
    /// Encode, corrupt and decode random messages end to end.
    CodecDemo(demo::DemoArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// How a command ended when it did not fail on its inputs.
pub enum Outcome {
    Pass,
    Violation,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit 2.
    Usage(String),
    /// The run itself failed; exit 1.
    Run(String),
}

impl CliError {
    pub fn usage(msg: impl ToString) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn run(msg: impl ToString) -> Self {
        CliError::Run(msg.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    syncstr::rational::parse_rational(s).map_err(|e| e.to_string())
}

pub fn parse_unit(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s)?;
    if syncstr::rational::is_open_unit(r) {
        Ok(r)
    } else {
        Err(format!("`{s}` must lie strictly between 0 and 1"))
    }
}

pub fn parse_property(s: &str) -> Result<SyncProperty, String> {
    s.parse()
}

/// `PxR`: a period alphabet of size P and a residual alphabet of size R.
pub fn parse_alphabet(s: &str) -> Result<AlphabetPlan, String> {
    let (p, r) = s.split_once('x').ok_or_else(|| format!("expected PxR, got `{s}`"))?;
    let period: u64 = p.parse().map_err(|_| format!("bad period `{p}`"))?;
    let residual: u64 = r.parse().map_err(|_| format!("bad residual `{r}`"))?;
    if period == 0 || residual == 0 {
        return Err("alphabet sizes must be positive".into());
    }
    Ok(AlphabetPlan { period, residual })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => strings_cmd::construct(&a),
        Command::Verify(a) => strings_cmd::verify(&a),
        Command::BenchIndexing(a) => bench::run(&a),
        Command::CodecDemo(a) => demo::run(&a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
