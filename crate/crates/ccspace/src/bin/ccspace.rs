//! Command-line entry point: scenario ingestion, dispatch, and
//! bit-exact report emission. Timings go to standard error only so the
//! report stays byte-identical across runs.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use sha2::{Digest, Sha256};

use ccspace::commands::{self, Command};
use ccspace::error::Error;
use ccspace::report::Report;
use ccspace::scenario::Scenario;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliCommand {
    Validate,
    Closures,
    Cct,
    Theorems,
    Limits,
    Blackhole,
    Families,
    Environment,
    All,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Command {
        match c {
            CliCommand::Validate => Command::Validate,
            CliCommand::Closures => Command::Closures,
            CliCommand::Cct => Command::Cct,
            CliCommand::Theorems => Command::Theorems,
            CliCommand::Limits => Command::Limits,
            CliCommand::Blackhole => Command::Blackhole,
            CliCommand::Families => Command::Families,
            CliCommand::Environment => Command::Environment,
            CliCommand::All => Command::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Scenario workbench for cognitive-consequence algebra.
#[derive(Debug, Parser)]
#[command(name = "ccspace", version)]
struct Cli {
    /// What to check.
    #[arg(value_enum)]
    command: CliCommand,
    /// Scenario file (TOML).
    scenario: PathBuf,
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Promote check failures and discrepancies to a non-zero exit.
    #[arg(long)]
    strict: bool,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario threshold ε.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Override the enumeration cap.
    #[arg(long)]
    cap: Option<usize>,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

const EXIT_OK: u8 = 0;
const EXIT_SCENARIO: u8 = 1;
const EXIT_STRICT: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("ccspace: {err}");
            let code = match err {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_SCENARIO,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let started = Instant::now();
    let (mut scenario, bytes) = Scenario::load(&cli.scenario)?;
    if let Some(seed) = cli.seed {
        scenario.parameters.seed = seed;
    }
    if let Some(epsilon) = cli.epsilon {
        scenario.parameters.epsilon = epsilon;
    }
    if let Some(cap) = cli.cap {
        scenario.parameters.cap = cap;
    }
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let wb = scenario.build()?;
    let command: Command = cli.command.into();
    let mut report = Report::new(command.as_str(), digest, wb.parameters.seed);
    commands::run(&wb, command, &mut report)?;

    let rendered = match cli.format {
        Format::Text => report.emit_text(),
        Format::Structured => report.emit_structured(),
    };
    match &cli.output {
        None => print!("{rendered}"),
        Some(path) => std::fs::write(path, rendered)?,
    }
    eprintln!("ccspace: {} finished in {:?}", command.as_str(), started.elapsed());

    if cli.strict && report.has_failures() {
        return Ok(EXIT_STRICT);
    }
    Ok(EXIT_OK)
}
