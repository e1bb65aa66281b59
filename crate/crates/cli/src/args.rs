use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "trapwell", version, about = "Bound states of a truncated harmonic well")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All bound levels: index, parity, |a|, E/ħω, kL.
    Spectrum {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normalized eigenfunction samples with the full-oscillator overlay.
    Wavefunction {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Level index, 0 for the ground state.
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Left end of the sampled range, in units of L.
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        x_min: f64,
        /// Right end of the sampled range, in units of L.
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 601)]
        samples: usize,
        /// Drop the psi_harmonic column.
        #[arg(long)]
        no_harmonic: bool,
    },
    /// Levels along a range of widths √ω·L.
    Sweep {
        /// Shape parameter r = V(0)/[V(0) − V(L)].
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Smallest √ω·L, in units of √(ħ/m).
        #[arg(long, default_value_t = 0.2)]
        from: f64,
        /// Largest √ω·L, in units of √(ħ/m).
        #[arg(long, default_value_t = 6.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Number of a_n columns.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Samples of f (both parities) and g over the bound window.
    Fdata {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Limit-regime level estimates next to the exact levels.
    Approx {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_enum, default_value_t = RegimeArg::All)]
        regime: RegimeArg,
        /// Highest oscillator quantum number for the harmonic estimate.
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Compare the spectrum with the finite-difference oracle.
    Verify {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Allowed |Δa| per level when the grid error is smaller.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Oracle grid points (odd, at least 201); default chosen from the well.
        #[arg(long)]
        points: Option<usize>,
        /// Oracle half-extent in units of L; default chosen from the well.
        #[arg(long)]
        extent: Option<f64>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct WellArgs {
    /// Shape parameter r = V(0)/[V(0) − V(L)].
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    /// Dimensionless half-width z_L = αL.
    #[arg(long = "z-l", group = "width", required_unless_present = "sqrt_omega_l", allow_negative_numbers = true)]
    pub z_l: Option<f64>,
    /// Half-width as √ω·L in units of √(ħ/m).
    #[arg(long = "sqrt-omega-L", group = "width", allow_negative_numbers = true)]
    pub sqrt_omega_l: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Square,
    SquareSimplified,
    Shallow,
    Harmonic,
    All,
}
