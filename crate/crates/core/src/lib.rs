//! Collective radiative properties of a finite chain of two-level emitters.
//!
//! The crate covers the retarded dipole-dipole transfer rate between chain
//! sites, collective decay rates of ±1 sign-pattern single-excitation
//! states (with an independent quadrature oracle for each closed form), and
//! the retarded far-field intensity emitted by independently decaying
//! atoms. Rates are reported in units of the single-atom rate `Γ_A`,
//! intensities in units of `I₀(x)`.

pub mod constants;
pub mod coupling;
pub mod damping;
pub mod emission;
pub mod error;
pub mod figures;
pub mod quadrature;
pub mod scales;
pub mod states;
pub mod sweep;
pub mod verify;

pub use coupling::{coupling_matrix, coupling_sweep, transfer_electrostatic, transfer_exact, CouplingMatrix};
pub use damping::{
    angle_sweep, damping_general, damping_quadrature_oracle, damping_symmetric, f_kernel,
    n_scaling_sweep, x_sweep, DampingResult, Method,
};
pub use emission::{
    build_geometry, emission_sweep, total_intensity, two_atom_asymptotic, two_atom_intensity,
    EmissionAxis, EmissionGeometry, IntensityTrace, PairState,
};
pub use error::{Error, Result};
pub use scales::{derive_scales, dimensionless_separation, AtomicScales, ChainConfig, ConfigFile, GammaSource};
pub use states::{enumerate_sign_states, pair_correlations, CorrelationMatrix, SignState};
pub use sweep::SweepTable;

/// Crate version recorded in output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
