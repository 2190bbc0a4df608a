mod commands;
mod config;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skewroot::abgroup::DEFAULT_ENUMERATION_BUDGET;
use skewroot::error::Error;
use skewroot::families::FamilyName;

use crate::commands::Outcome;
use crate::config::{JobConfig, Target};

/// Exact analysis of skew root systems and their graded algebras.
///
/// Exit status: 0 success, 1 negative finding, 2 input error, 3 budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "skewroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the skew root system axioms.
    Validate(JobArgs),
    /// Build the algebra and report forms, centroid, simplicity and identification.
    Analyze(JobArgs),
    /// List all skew root systems of a bicharacter up to isomorphism.
    Enumerate(JobArgs),
    /// Check a named family member against its predicted invariants.
    Family(JobArgs),
    /// Write the structure constants of the algebra.
    Export(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Job file with [group], [bicharacter], [rootsystem] and [run] sections.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Family name such as `nonsingular:2,3:lie` or `quad:f1:2:jordan`.
    #[arg(long)]
    family: Option<String>,
    /// Output file for exports and census files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on enumerated group elements and search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse(_)
            | Error::InvalidGroup(_)
            | Error::InvalidBicharacter(_)
            | Error::InvalidCocycle(_)
            | Error::RangeError(_)
            | Error::ShapeMismatch(_) => Failure::Input(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Budget(m) => write!(f, "{m}"),
            Failure::Other(m) => write!(f, "error: {m}"),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

fn load(args: &JobArgs) -> Result<JobConfig, Failure> {
    let mut cfg = match (&args.config, &args.family) {
        (Some(_), Some(_)) => {
            return Err(Failure::Input(
                "give either --config or --family, not both".into(),
            ))
        }
        (None, None) => return Err(Failure::Input("a job needs --config or --family".into())),
        (None, Some(name)) => JobConfig::for_family(name.parse::<FamilyName>()?),
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            JobConfig::parse(&text)?
        }
    };
    if args.out.is_some() {
        cfg.out.clone_from(&args.out);
    }
    if args.budget.is_some() {
        cfg.budget = args.budget;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let args = match &cli.command {
        Command::Validate(a)
        | Command::Analyze(a)
        | Command::Enumerate(a)
        | Command::Family(a)
        | Command::Export(a) => a,
    };
    if let Some(n) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(format!("cannot start {n} worker threads: {e}")))?;
    }
    let cfg = load(args)?;
    let budget = cfg.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let outcome: Outcome = match &cli.command {
        Command::Validate(_) => commands::validate_cmd(&cfg)?,
        Command::Analyze(_) => commands::analyze_cmd(&cfg, budget)?,
        Command::Export(_) => commands::export_cmd(&cfg)?,
        Command::Family(_) => match &cfg.target {
            Target::Family(name) => commands::family_cmd(name)?,
            _ => {
                return Err(Failure::Input(
                    "the family command needs --family or `family = ...`".into(),
                ))
            }
        },
        Command::Enumerate(_) => match &cfg.target {
            Target::Enumerate { beta, kind } => commands::enumerate_cmd(beta, *kind, budget)?,
            _ => {
                return Err(Failure::Input(
                    "enumeration needs `enumerate = lie|jordan` in [run]".into(),
                ))
            }
        },
    };
    print!("{}", outcome.report);
    if let Some(payload) = &outcome.export {
        match &cfg.out {
            Some(path) => {
                fs::write(path, payload)
                    .map_err(|e| Failure::Other(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            None if matches!(cli.command, Command::Export(_) | Command::Enumerate(_)) => {
                print!("{payload}")
            }
            None => {}
        }
    }
    Ok(u8::from(outcome.negative))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
