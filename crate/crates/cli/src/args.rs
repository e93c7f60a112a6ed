use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Collective decay rates, couplings and retarded emission of a finite
/// emitter chain, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "chainrad", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON chain configuration; built-in defaults are used when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Override one configuration key, e.g. `n_atoms=5`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    /// Number of grid points.
    #[arg(long, global = true)]
    pub points: Option<usize>,

    /// Grid range as `lo:hi`.
    #[arg(long, global = true, value_name = "LO:HI", allow_hyphen_values = true)]
    pub range: Option<String>,

    /// Sign state: `sym`, `alt` or a pattern such as `+-+`.
    #[arg(long, global = true)]
    pub state: Option<String>,

    /// Add quadrature cross-check columns.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Polarization angles in degrees, comma separated. Defaults to the
    /// configured angle.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub phis: Option<Vec<f64>>,

    /// CSV destination; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived atomic scales of the configured chain.
    Scales,
    /// J/Γ_A versus q_A·a, or the site-basis coupling matrix.
    Coupling {
        /// Print the N×N matrix of J_nm/Γ_A for the configured chain.
        #[arg(long)]
        matrix: bool,
        /// Keep only nearest-neighbour entries of the matrix.
        #[arg(long, requires = "matrix")]
        nearest: bool,
    },
    /// Collective decay rate of a sign state versus q_A·a.
    Damping,
    /// Symmetric-state rate versus chain length.
    Nscaling {
        /// q_A·a; defaults to the configured lattice.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Symmetric-state rate versus polarization angle.
    Angles {
        /// q_A·a; defaults to the configured lattice.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Retarded far-field intensity versus lattice constant or time.
    Emission {
        /// Observation distance in Å.
        #[arg(long, default_value_t = 1e6)]
        obs_x: f64,
        /// Observation time in seconds; defaults to 2x/c.
        #[arg(long, conflicts_with = "vs_time")]
        time: Option<f64>,
        /// Sweep observation time (range in seconds) at the configured
        /// lattice constant.
        #[arg(long)]
        vs_time: bool,
    },
    /// Reproduce a published figure.
    Figure {
        /// Figure number.
        number: u32,
    },
    /// Compare every closed-form rate against quadrature.
    Verify {
        /// Largest chain length checked.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Maximum accepted relative disagreement.
        #[arg(long, default_value_t = chainrad::verify::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}
