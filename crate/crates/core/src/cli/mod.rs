//! The `qsl` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a usage, configuration or I/O error, 2 when
//! a bound exceeds the elapsed time or a rate inequality fails.

mod commands;
mod config;
mod csv;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{
    applicable_bounds, bound_picture, bound_row, cmd_bound, cmd_reproduce, cmd_sweep, cmd_verify,
    is_violation, misl_initial_state, oqsl_observable, sweep_header, sweep_point, CommandOutput,
    BOUND_COLUMNS, SWEEP_BOUNDS, VERIFY_COLUMNS,
};
pub use config::{
    BoundSelection, ConfigFile, GridPoint, ProcessName, RunConfig, RunOverrides, SweepConfig,
    SweepOverrides,
};
pub use csv::{format_number, CsvBuffer, PRINT_ZERO_BELOW, SIGNIFICANT_DIGITS};

use crate::error::{Error, Result};
use crate::figures::FigureId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ConfigError = 1,
    Violation = 2,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsl",
    version,
    about = "Speed limits on correlations for two-qubit dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate speed limits for one trajectory.
    Bound(RunArgs),
    /// Write the CSV curves of a figure (or `all`).
    Reproduce(ReproduceArgs),
    /// Evaluate every applicable bound over a parameter grid.
    Sweep(SweepArgs),
    /// Check the rate inequalities along one trajectory.
    Verify(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// nonlocal | dephasing | depolarizing | amplitude
    #[arg(long)]
    pub process: Option<String>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long = "mu-z", allow_hyphen_values = true)]
    pub mu_z: Option<f64>,
    /// Initial state √p|00⟩ + √(1−p)|11⟩.
    #[arg(long = "p")]
    pub p: Option<f64>,
    /// CHSH angle; derived from p when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long = "t-final", allow_hyphen_values = true)]
    pub t_final: Option<f64>,
    /// RK4 steps (even); defaults to 2000 per unit time.
    #[arg(long)]
    pub steps: Option<usize>,
    /// nsl | csl | icsl | bqsl | bqsl-sep | misl | esl | oqsl | all, comma separated.
    #[arg(long)]
    pub bound: Option<String>,
    /// schrodinger | heisenberg
    #[arg(long)]
    pub picture: Option<String>,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// Figure id (fig1, fig2, fig3a, fig3b, fig4a, fig4b, fig5-appendix,
    /// fig6a-appendix, fig6b-appendix) or `all`.
    pub figure: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Comma-separated lists; absent values fall back to the acceptance grid.
#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub process: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long = "mu-z", allow_hyphen_values = true)]
    pub mu_z: Option<f64>,
    #[arg(long = "p")]
    pub p: Option<String>,
    #[arg(long = "t-final")]
    pub t_final: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    pub fn resolve(self) -> Result<RunConfig> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        let flags = RunOverrides {
            process: self.process,
            gamma: self.gamma,
            theta: self.theta,
            mu_z: self.mu_z,
            p: self.p,
            eta: self.eta,
            t_final: self.t_final,
            steps: self.steps,
            bound: self.bound,
            picture: self.picture,
            out: self.out,
        };
        RunConfig::resolve(flags, file.as_ref())
    }
}

impl SweepArgs {
    pub fn resolve(self) -> Result<SweepConfig> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        let flags = SweepOverrides {
            process: self.process,
            gamma: self.gamma,
            theta: self.theta,
            mu_z: self.mu_z,
            p: self.p,
            t_final: self.t_final,
            out: self.out,
        };
        SweepConfig::resolve(flags, file.as_ref())
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidConfig(format!("cannot write output: {e}"))),
    }
}

fn finish(output: CommandOutput, out: Option<&Path>, stdout: &mut dyn Write) -> Result<ExitStatus> {
    emit(&output.csv, out, stdout)?;
    Ok(if output.violation {
        ExitStatus::Violation
    } else {
        ExitStatus::Success
    })
}

pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<ExitStatus> {
    match command {
        Command::Bound(args) => {
            let cfg = args.resolve()?;
            finish(cmd_bound(&cfg)?, cfg.out.as_deref(), stdout)
        }
        Command::Verify(args) => {
            let cfg = args.resolve()?;
            finish(cmd_verify(&cfg)?, cfg.out.as_deref(), stdout)
        }
        Command::Sweep(args) => {
            let cfg = args.resolve()?;
            finish(cmd_sweep(&cfg)?, cfg.out.as_deref(), stdout)
        }
        Command::Reproduce(args) => {
            let figures = if args.figure.eq_ignore_ascii_case("all") {
                FigureId::ALL.to_vec()
            } else {
                vec![args.figure.parse()?]
            };
            for path in cmd_reproduce(&figures, &args.out)? {
                writeln!(stdout, "{}", path.display())
                    .map_err(|e| Error::InvalidConfig(format!("cannot write output: {e}")))?;
            }
            Ok(ExitStatus::Success)
        }
    }
}

/// Parses `args` (program name first) and runs the command. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                ExitStatus::ConfigError
            } else {
                // --help and --version
                let _ = write!(stdout, "{e}");
                ExitStatus::Success
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(status) => {
            if status == ExitStatus::Violation {
                let _ = writeln!(stderr, "error: bound-validity violation detected");
            }
            status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            ExitStatus::ConfigError
        }
    }
}
