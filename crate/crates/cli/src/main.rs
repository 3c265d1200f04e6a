mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cauchy_gabor::{GaborError, GaborLattice};

pub const SEED_VAR: &str = "GABOR_SEED";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "cauchy-gabor", version, about = "Gabor frames of the Cauchy window: dual windows, bounds, Zak and multiplier profiles, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the canonical dual window on [tmin, tmax].
    Dual(CommonArgs),
    /// Frame bound estimates, corollary brackets and, at critical density, the exact bounds.
    Bounds(CommonArgs),
    /// Zak transform of the window on a (t, omega) grid over one period cell.
    Zak(ZakArgs),
    /// The multiplier h_hat and the dual Fourier profile on a frequency grid [tmin, tmax].
    Hhat(CommonArgs),
    /// Run the numerical checks and write a verification report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub w: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub tmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Time truncation radius |m| <= M for truncated frame sums (verify picks one when absent).
    #[arg(short = 'M', long = "m-radius")]
    pub m_radius: Option<usize>,
    /// Frequency truncation radius |n| <= N for truncated frame sums (verify picks one when absent).
    #[arg(short = 'N', long = "n-radius")]
    pub n_radius: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct ZakArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of omega samples in [0, 1/alpha).
    #[arg(long, default_value_t = 64)]
    pub omega_samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Test signals for the route and reconstruction checks.
    #[arg(long, default_value_t = 3)]
    pub signals: usize,
    /// Random trial signals for the empirical bounds.
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    #[arg(long = "tol-dual_vs_oracle")]
    pub tol_dual_vs_oracle: Option<f64>,
    #[arg(long = "tol-S_route_equivalence")]
    pub tol_s_route_equivalence: Option<f64>,
    #[arg(long = "tol-S_gamma_equals_g")]
    pub tol_s_gamma_equals_g: Option<f64>,
    #[arg(long = "tol-reconstruction")]
    pub tol_reconstruction: Option<f64>,
    #[arg(long = "tol-bound_sandwich")]
    pub tol_bound_sandwich: Option<f64>,
    #[arg(long = "tol-gamma_hat_support")]
    pub tol_gamma_hat_support: Option<f64>,
}

impl VerifyArgs {
    pub fn overrides(&self) -> [(&'static str, Option<f64>); 6] {
        [
            ("dual_vs_oracle", self.tol_dual_vs_oracle),
            ("S_route_equivalence", self.tol_s_route_equivalence),
            ("S_gamma_equals_g", self.tol_s_gamma_equals_g),
            ("reconstruction", self.tol_reconstruction),
            ("bound_sandwich", self.tol_bound_sandwich),
            ("gamma_hat_support", self.tol_gamma_hat_support),
        ]
    }
}

impl CommonArgs {
    pub fn lattice(&self) -> Result<GaborLattice, CliError> {
        Ok(GaborLattice::new(self.alpha, self.beta, self.w)?)
    }

    /// `(tmin, tmax, samples)` with per-command defaults, validated.
    pub fn range(&self, default: (f64, f64, usize)) -> Result<(f64, f64, usize), CliError> {
        let lo = self.tmin.unwrap_or(default.0);
        let hi = self.tmax.unwrap_or(default.1);
        let n = self.samples.unwrap_or(default.2);
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CliError::Param(format!("need finite tmin < tmax, got {lo} and {hi}")));
        }
        if n < 2 {
            return Err(CliError::Param(format!("need at least 2 samples, got {n}")));
        }
        Ok((lo, hi, n))
    }
}

#[derive(Debug)]
pub enum CliError {
    Param(String),
    Numerical(String),
    Io(String),
}

impl From<GaborError> for CliError {
    fn from(e: GaborError) -> Self {
        match e {
            GaborError::Numerical(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Param(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Param(_) => 2,
            CliError::Numerical(_) => 1,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Param(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

pub fn seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Param(format!("{SEED_VAR}={s} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(CliError::Param(format!("{SEED_VAR}: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Dual(a) => commands::dual(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Zak(a) => commands::zak(a),
        Command::Hhat(a) => commands::hhat(a),
        Command::Verify(a) => commands::verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cauchy-gabor: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
