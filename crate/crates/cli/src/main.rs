//! `abscat`: run scattering scenarios, parameter sweeps and the
//! certification suite.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 solver error,
//! 3 certification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use abscat::certify::{certify, CertifyProfile};
use clap::{Parser, Subcommand};

mod output;
mod run;
mod scenario;
mod sweep;

use scenario::{Format, ModeRange, Scenario};

/// Overrides the output directory of `run` and `sweep` (below `--out`).
pub const OUT_DIR_ENV: &str = "ABSCAT_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("io: {0}")]
    Io(String),
    #[error("certification failed")]
    Certification,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Solver(_) => 2,
            CliError::Certification => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "abscat", version, about = "Partial-wave scattering and absorption by a flux line with a singular core")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// Output directory (overrides the config and $ABSCAT_OUT_DIR)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table format (overrides the config)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Mode interval, `auto` or `lo:hi` (overrides the config)
    #[arg(long)]
    m_range: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one scenario and write per-mode, summary and dsigma/dphi tables
    Run {
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check closed forms against the numerical oracle
    Certify {
        /// Tighten every tolerance by 100x
        #[arg(long)]
        strict: bool,
    },
    /// Solve the Cartesian product of parameter lists
    Sweep {
        config: PathBuf,
        /// `name=start:stop:step` or `name=v1,v2,...`; repeatable
        #[arg(long, required = true)]
        vary: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn prepare(config: &PathBuf, args: &OutputArgs) -> Result<(Scenario, PathBuf, Format), CliError> {
    let mut scenario = Scenario::load(config)?;
    if let Some(range) = &args.m_range {
        scenario.modes.range = ModeRange::parse(range)?;
    }
    let dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| scenario.output.dir.clone());
    let format = args.format.unwrap_or(scenario.output.format);
    Ok((scenario, dir, format))
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, output } => {
            let (scenario, dir, format) = prepare(&config, &output)?;
            let result = run::solve(&scenario)?;
            for path in result.write(&dir, format)? {
                println!("wrote {}", path.display());
            }
            println!(
                "modes {}..={}  sigma_abs = {}  [{}]",
                result.mode_range.0,
                result.mode_range.1,
                output::float(result.total_abs),
                result.models
            );
            Ok(())
        }
        Command::Certify { strict } => {
            let profile = if strict { CertifyProfile::strict() } else { CertifyProfile::default_profile() };
            let report = certify(&profile);
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Certification)
            }
        }
        Command::Sweep { config, vary, output } => {
            let (scenario, dir, format) = prepare(&config, &output)?;
            let axes = vary.iter().map(|v| sweep::Axis::parse(v)).collect::<Result<Vec<_>, _>>()?;
            let result = sweep::sweep(&scenario, &axes)?;
            for path in result.write(&dir, format)? {
                println!("wrote {}", path.display());
            }
            let failed = result.failures();
            println!("{} points, {failed} failed", result.points.len());
            if failed > 0 {
                let first = result.points.iter().find_map(|(_, r)| r.as_ref().err()).unwrap();
                return Err(CliError::Solver(format!("{failed} sweep point(s) failed; first: {first}")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
