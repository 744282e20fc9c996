//! `xdecay` command-line front end.

mod commands;
mod output;
mod state_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use xdecay::{BathParams, BoundVariant, QubitEnergy, XState};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] xdecay::Error),
    /// Carries the full comparison report, which is still printed.
    #[error("verification failed: max deviation {max_deviation:e} exceeds tolerance")]
    Verification { report: String, max_deviation: f64 },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "xdecay",
    version,
    about = "Two-qubit X states under thermal amplitude damping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve a state to time --t and print state, concurrence and energy.
    Evolve(RunArgs),
    /// Write a CSV time series over [0, --t-max] with --steps points.
    Trace(RunArgs),
    /// Locate the disentanglement time and the energy transferred by then.
    Death(RunArgs),
    /// Print the energy bounds that guarantee disentanglement.
    Bounds(RunArgs),
    /// Compare the closed-form propagator with RK4 master-equation integration.
    Verify(RunArgs),
    /// Death time, death energy and bounds over an n̄ grid [0, --nbar] with --steps points.
    Sweep(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// State file with keys a, b, c, d, z.
    #[arg(long, conflicts_with = "preset")]
    pub state: Option<PathBuf>,
    /// bell-plus, bell-minus, ye4-third or werner(p).
    #[arg(long)]
    pub preset: Option<String>,
    /// Mean thermal occupation n̄ (sweep: upper end of the grid).
    #[arg(long)]
    pub nbar: Option<f64>,
    /// Damping rate Γ.
    #[arg(long, default_value_t = 1.0)]
    pub gamma_rate: f64,
    /// Level splitting E_A of qubit A.
    #[arg(long, default_value_t = 1.0)]
    pub ea: f64,
    /// Evolution time (trace: end of the grid).
    #[arg(long = "t", visible_alias = "t-max", default_value_t = 1.0)]
    pub t: f64,
    /// Number of grid points for trace and sweep.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "corrected", value_parser = parse_variant)]
    pub bound_variant: BoundVariant,
    /// Seed for the random states used by verify.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Death-time bisection tolerance; defaults to 1e-9 / Γ(2n̄+1).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Number of random states drawn by verify.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

fn parse_variant(s: &str) -> Result<BoundVariant, String> {
    s.parse().map_err(|e: xdecay::Error| e.to_string())
}

/// Validated inputs shared by every subcommand.
pub struct RunConfig {
    pub state: XState,
    pub bath: BathParams,
    pub energy: QubitEnergy,
    pub args: RunArgs,
}

impl RunConfig {
    fn from_args(args: RunArgs, default_nbar: f64) -> Result<Self, CliError> {
        let state = match (&args.state, &args.preset) {
            (Some(path), None) => state_file::read_state(path)?,
            (None, Some(name)) => xdecay::preset_state(name)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "one of --state or --preset is required".into(),
                ))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--state and --preset are mutually exclusive".into(),
                ))
            }
        };
        let bath = BathParams::new(args.gamma_rate, args.nbar.unwrap_or(default_nbar))?;
        let energy = QubitEnergy::new(args.ea)?;
        if !(args.t.is_finite() && args.t >= 0.0) {
            return Err(CliError::Usage(format!(
                "--t must be non-negative, got {}",
                args.t
            )));
        }
        if let Some(tol) = args.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::Usage(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
        }
        Ok(Self {
            state,
            bath,
            energy,
            args,
        })
    }

    fn require_grid(&self) -> Result<(), CliError> {
        if self.args.steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {}",
                self.args.steps
            )));
        }
        if self.args.t <= 0.0 {
            return Err(CliError::Usage("--t-max must be positive".into()));
        }
        Ok(())
    }

    pub fn time_tol(&self) -> f64 {
        self.args
            .tol
            .unwrap_or_else(|| xdecay::default_time_tol(&self.bath))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Evolve(args) => commands::evolve(&RunConfig::from_args(args, 0.0)?),
        Command::Trace(args) => {
            let config = RunConfig::from_args(args, 0.0)?;
            config.require_grid()?;
            commands::trace(&config)
        }
        Command::Death(args) => commands::death(&RunConfig::from_args(args, 0.0)?),
        Command::Bounds(args) => commands::bounds(&RunConfig::from_args(args, 0.0)?),
        Command::Verify(args) => commands::verify(&args),
        Command::Sweep(args) => {
            let config = RunConfig::from_args(args, 10.0)?;
            if config.args.steps < 2 {
                return Err(CliError::Usage(format!(
                    "--steps must be at least 2, got {}",
                    config.args.steps
                )));
            }
            commands::sweep(&config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                print!("{report}");
            }
            eprintln!("xdecay: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
