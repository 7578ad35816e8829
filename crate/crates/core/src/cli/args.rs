use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "jc-freespace",
    version,
    about = "Stationary states of a two-level atom in a quantized two-mode field",
    long_about = "Energies are in recoil units E_rec = hbar^2 k^2 / 2M and are reported \
                  relative to N hbar Omega; momenta are in units of hbar k; eta = k z."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the classical, operator-algebra and traveling-wave checks.
    Verify(VerifyArgs),
    /// Energies against total momentum.
    Spectrum(SpectrumArgs),
    /// Floquet band structure of the standing-wave Hill equation.
    Bands(BandsArgs),
    /// Reduced center-of-mass density of a stationary state.
    Density(DensityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Classical,
    Commutators,
    Hermiticity,
    MomentumDiagonal,
    Traveling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Ground band of the standing-wave Hill equation (alpha = pi/4).
    Floquet,
    /// Closed-form traveling-wave amplitudes (alpha = 0).
    Traveling,
    /// Lowest joint eigenstate of the full truncated model.
    Stationary,
}

#[derive(Clone, Debug, Args)]
pub struct PhysicsArgs {
    /// Second-quantization basis angle (0: traveling waves, pi/4: standing waves).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Excitation number.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Atom-field coupling.
    #[arg(long, default_value_t = 1.0)]
    pub zeta: f64,
    /// Detuning.
    #[arg(long = "Delta", default_value_t = 100.0, allow_hyphen_values = true)]
    pub delta: f64,
    /// Photon energy.
    #[arg(long = "Omega", default_value_t = 100.0)]
    pub omega: f64,
    /// Effective coupling; sets zeta = sqrt(xi * Delta) for the full model.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Plane-wave cutoff |n| <= n_max.
    #[arg(long = "n-max", default_value_t = 12)]
    pub n_max: usize,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Restrict to these checks (repeatable); all by default.
    #[arg(long, value_enum)]
    pub check: Vec<Check>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Single total momentum; overrides the range.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long = "p-min", default_value_t = -1.0, allow_hyphen_values = true)]
    pub p_min: f64,
    #[arg(long = "p-max", default_value_t = 1.0, allow_hyphen_values = true)]
    pub p_max: f64,
    #[arg(long = "p-steps", default_value_t = 21)]
    pub p_steps: usize,
    /// Branches per momentum.
    #[arg(long, default_value_t = 6)]
    pub k: usize,
    /// Overlay the adiabatic closed form (alpha = 0 only).
    #[arg(long)]
    pub adiabatic: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct BandsArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub p: f64,
    #[arg(long = "eps-min", default_value_t = -2.0, allow_hyphen_values = true)]
    pub eps_min: f64,
    #[arg(long = "eps-max", default_value_t = 6.0, allow_hyphen_values = true)]
    pub eps_max: f64,
    #[arg(long = "eps-step", default_value_t = 0.02)]
    pub eps_step: f64,
    #[arg(long = "ode-tol", default_value_t = 1e-10)]
    pub ode_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub p: f64,
    /// Amplitude source; traveling at alpha = 0, floquet otherwise.
    #[arg(long, value_enum)]
    pub source: Option<Source>,
    /// Samples over [0, 2 pi).
    #[arg(long, default_value_t = crate::density::DEFAULT_DENSITY_SAMPLES)]
    pub samples: usize,
    #[arg(long = "ode-tol", default_value_t = 1e-11)]
    pub ode_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
