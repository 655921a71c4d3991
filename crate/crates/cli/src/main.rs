//! `affine-tail`: evaluate, compare, simulate, certify and invert
//! concentration bounds with affine thresholds.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 certification
//! failure, 4 soundness violation.

mod bound;
mod certify;
mod compare;
mod invert;
mod output;
mod params;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "affine-tail",
    version,
    about = "Concentration bounds with a threshold affine in the observed sum"
)]
struct Cli {
    /// Worker threads for simulate and certify; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one inequality.
    Bound(bound::BoundArgs),
    /// Tabulate the known-mean bound against the classical ones over ε.
    Compare(compare::CompareArgs),
    /// Estimate a tail probability by Monte Carlo and test the bound against it.
    Simulate(simulate::SimulateArgs),
    /// Check the analytic conditions behind the base inequality on a grid.
    Certify(certify::CertifyArgs),
    /// Find the ε at which a bound reaches a target probability.
    Invert(invert::InvertArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Core(affine_tail::Error),
    Io(String),
}

impl From<affine_tail::Error> for CliError {
    fn from(e: affine_tail::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(affine_tail::Error::Domain(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    let (text, out, code) = match &cli.command {
        Command::Bound(a) => (bound::run(a)?, &a.out, 0),
        Command::Compare(a) => (compare::run(a)?, &a.out, 0),
        Command::Invert(a) => (invert::run(a)?, &a.out, 0),
        Command::Simulate(a) => {
            let (text, sound) = simulate::run(a)?;
            (text, &a.out, if sound { 0 } else { 4 })
        }
        Command::Certify(a) => {
            let (text, passed) = certify::run(a)?;
            (text, &a.out, if passed { 0 } else { 3 })
        }
    };
    output::emit(&text, out.output.as_deref())?;
    match code {
        3 => eprintln!("certification failed: some check has a margin below -slack"),
        4 => eprintln!("soundness violation: the lower confidence limit exceeds the bound"),
        _ => {}
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
