//! Named sweeps reproducing the published coupling, damping and emission
//! curves as CSV tables.

use std::f64::consts::FRAC_PI_2;

use crate::constants::{self, ANGSTROM, SPEED_OF_LIGHT};
use crate::coupling::coupling_sweep;
use crate::damping::{angle_sweep, f_kernel_sweep, n_scaling_sweep, x_sweep};
use crate::emission::{emission_sweep, EmissionAxis};
use crate::error::{Error, Result};
use crate::scales::ChainConfig;
use crate::states::SignState;
use crate::sweep::{linspace, logspace, SweepTable};

/// Figure numbers with a data sweep (1 and 15 are schematics).
pub const SUPPORTED_FIGURES: [u32; 18] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 18, 19, 20];

pub const DEFAULT_X_RANGE: (f64, f64) = (0.01, 20.0);
pub const DEFAULT_X_POINTS: usize = 1000;
pub const DEFAULT_N_MAX: usize = 200;
pub const DEFAULT_ANGLE_RANGE_DEG: (f64, f64) = (0.0, 180.0);
pub const DEFAULT_ANGLE_POINTS: usize = 181;
pub const DEFAULT_EMISSION_POINTS: usize = 2000;
/// Lower end of the lattice-constant grid for emission figures, Å.
pub const EMISSION_A_MIN_ANGSTROM: f64 = 1e3;

/// Observation distance of the emission figures, Å.
pub const EMISSION_OBS_X_ANGSTROM: f64 = 1e6;
/// Single-atom rate assumed by the emission figures, Hz.
pub const EMISSION_GAMMA_HZ: f64 = 1e8;

/// Grid overrides; `None` keeps the figure's default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FigureOptions {
    pub points: Option<usize>,
    /// `x` range, `N` range (upper end used), angle range in degrees, or
    /// lattice-constant range in Å, depending on the figure.
    pub range: Option<(f64, f64)>,
    pub oracle: bool,
}

fn both_polarizations() -> [f64; 2] {
    [0.0, FRAC_PI_2]
}

fn x_grid(opts: &FigureOptions) -> Result<Vec<f64>> {
    let (lo, hi) = opts.range.unwrap_or(DEFAULT_X_RANGE);
    linspace(lo, hi, opts.points.unwrap_or(DEFAULT_X_POINTS))
}

/// Largest lattice constant (m) whose second atom's light has reached the
/// observer by `t`.
pub fn causal_lattice_limit(obs_x: f64, t: f64) -> f64 {
    let reach = SPEED_OF_LIGHT * t;
    (reach * reach - obs_x * obs_x).max(0.0).sqrt()
}

/// Chain configuration behind the emission figures: E_A = 1 eV,
/// μ = 1 e·Å, Γ_A = 10⁸ Hz.
pub fn emission_config(phi_deg: f64) -> ChainConfig {
    ChainConfig::from_lab_units(2, 1000.0, 1.0, 1.0, phi_deg, Some(EMISSION_GAMMA_HZ))
        .expect("emission figure configuration is valid")
}

/// Emission figure observation distance (m) and time (s), `t = 2x/c`.
pub fn emission_observation() -> (f64, f64) {
    let x = EMISSION_OBS_X_ANGSTROM * ANGSTROM;
    (x, 2.0 * x / SPEED_OF_LIGHT)
}

/// Default lattice-constant grid for the emission figures, in meters:
/// log-spaced from 10³ Å up to the causal limit at `t = 2x/c`.
pub fn emission_a_grid(opts: &FigureOptions) -> Result<Vec<f64>> {
    let (x, t) = emission_observation();
    let (lo, hi) = match opts.range {
        Some((lo, hi)) => (lo * ANGSTROM, hi * ANGSTROM),
        None => (
            EMISSION_A_MIN_ANGSTROM * ANGSTROM,
            causal_lattice_limit(x, t) * (1.0 - 1e-9),
        ),
    };
    logspace(lo, hi, opts.points.unwrap_or(DEFAULT_EMISSION_POINTS))
}

fn caption(number: u32) -> &'static str {
    match number {
        2 => "J/Gamma_A vs q_A*a",
        3 => "J/Gamma_A exact and electrostatic, phi=0",
        4 => "J/Gamma_A exact and electrostatic, phi=90",
        5 => "F(x) vs x",
        6 => "symmetric Gamma/Gamma_A vs q_A*a, N=5",
        7 => "symmetric Gamma/Gamma_A vs N, q_A*a=0.001",
        8 => "symmetric Gamma/Gamma_A vs N, q_A*a=0.1",
        9 => "symmetric Gamma/Gamma_A vs N, q_A*a=1",
        10 => "symmetric Gamma/Gamma_A vs phi, N=100, q_A*a=0.1",
        11 => "Gamma/Gamma_A vs q_A*a, N=2 symmetric",
        12 => "Gamma/Gamma_A vs q_A*a, N=2 antisymmetric",
        13 => "Gamma/Gamma_A vs q_A*a, N=3 symmetric",
        14 => "Gamma/Gamma_A vs q_A*a, N=3 antisymmetric",
        16 => "symmetric I/I0 vs a, phi=0",
        17 => "symmetric I/I0 vs a, phi=45",
        18 => "symmetric or antisymmetric I/I0 vs a, phi=90",
        19 => "antisymmetric I/I0 vs a, phi=0",
        20 => "antisymmetric I/I0 vs a, phi=45",
        _ => "",
    }
}

/// Builds the table for figure `number`.
pub fn figure_table(number: u32, opts: &FigureOptions) -> Result<SweepTable> {
    if !SUPPORTED_FIGURES.contains(&number) {
        return Err(Error::Domain(format!(
            "figure {number} is not reproducible; supported: {SUPPORTED_FIGURES:?}"
        )));
    }
    let mut table = match number {
        2 => coupling_from(opts, &both_polarizations())?,
        3 => coupling_from(opts, &[0.0])?,
        4 => coupling_from(opts, &[FRAC_PI_2])?,
        5 => f_kernel_sweep(&x_grid(opts)?, &both_polarizations()),
        6 => x_sweep(&SignState::symmetric(5)?, &x_grid(opts)?, &both_polarizations(), opts.oracle)?,
        7 => n_sweep_from(opts, 0.001)?,
        8 => n_sweep_from(opts, 0.1)?,
        9 => n_sweep_from(opts, 1.0)?,
        10 => {
            let (lo, hi) = opts.range.unwrap_or(DEFAULT_ANGLE_RANGE_DEG);
            let grid: Vec<f64> = linspace(lo, hi, opts.points.unwrap_or(DEFAULT_ANGLE_POINTS))?
                .into_iter()
                .map(f64::to_radians)
                .collect();
            angle_sweep(100, 0.1, &grid)?
        }
        11 => x_sweep(&SignState::symmetric(2)?, &x_grid(opts)?, &both_polarizations(), opts.oracle)?,
        12 => x_sweep(&SignState::alternating(2)?, &x_grid(opts)?, &both_polarizations(), opts.oracle)?,
        13 => x_sweep(&SignState::symmetric(3)?, &x_grid(opts)?, &both_polarizations(), opts.oracle)?,
        14 => x_sweep(&SignState::alternating(3)?, &x_grid(opts)?, &both_polarizations(), opts.oracle)?,
        16 => emission_from(opts, SignState::symmetric(2)?, 0.0)?,
        17 => emission_from(opts, SignState::symmetric(2)?, 45.0)?,
        18 => emission_from(opts, SignState::symmetric(2)?, 90.0)?,
        19 => emission_from(opts, SignState::alternating(2)?, 0.0)?,
        20 => emission_from(opts, SignState::alternating(2)?, 45.0)?,
        _ => unreachable!("checked against SUPPORTED_FIGURES"),
    };
    let mut header = vec![
        ("tool".to_string(), format!("chainrad-{}", crate::VERSION)),
        ("figure".to_string(), number.to_string()),
        ("caption".to_string(), caption(number).to_string()),
    ];
    header.append(&mut table.metadata);
    header.extend(constants::metadata());
    table.metadata = header;
    Ok(table)
}

fn coupling_from(opts: &FigureOptions, phis: &[f64]) -> Result<SweepTable> {
    let (lo, hi) = opts.range.unwrap_or(DEFAULT_X_RANGE);
    coupling_sweep(lo, hi, opts.points.unwrap_or(DEFAULT_X_POINTS), phis)
}

fn n_sweep_from(opts: &FigureOptions, x: f64) -> Result<SweepTable> {
    let n_max = match opts.range {
        Some((_, hi)) if hi >= 1.0 => hi as usize,
        Some((_, hi)) => return Err(Error::Domain(format!("N range upper end {hi} is below 1"))),
        None => DEFAULT_N_MAX,
    };
    n_scaling_sweep(n_max, x, &both_polarizations())
}

fn emission_from(opts: &FigureOptions, state: SignState, phi_deg: f64) -> Result<SweepTable> {
    let (x, t) = emission_observation();
    let cfg = emission_config(phi_deg);
    let axis = EmissionAxis::LatticeConst { values: emission_a_grid(opts)?, t };
    Ok(emission_sweep(&state, &cfg, x, &axis)?.to_table())
}
