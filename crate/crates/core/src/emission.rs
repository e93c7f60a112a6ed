//! Retarded far-field intensity from a chain of independently decaying
//! emitters.
//!
//! Atoms sit at `R_n = (n − 1)·a` on the z axis, the observation point at
//! `(x, 0, 0)`, and the dipole is `μ(sin φ, 0, cos φ)`. Intensities are
//! reported as `I/I₀` with `I₀(x) = μ²ω_A⁴ / (16π² ε₀ c³ x²)`.

use std::f64::consts::{FRAC_PI_2, PI};

use log::warn;

use crate::constants::{EPSILON_0, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::scales::{derive_scales, meters_to_angstrom, AtomicScales, ChainConfig};
use crate::states::{pair_correlations, SignState};
use crate::sweep::{trim_degrees, SweepTable};

/// Observation geometry: per-atom distances, emission angles, retardation
/// times and unit vectors toward the observer.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionGeometry {
    /// Observation distance along x, m.
    pub obs_x: f64,
    /// Dipole polarization angle, rad.
    pub phi: f64,
    /// Atom positions along the chain, m.
    pub atom_z: Vec<f64>,
    /// Angle between the dipole and `r − R_n`, rad.
    pub phi_n: Vec<f64>,
    /// `|r − R_n|`, m.
    pub dist_n: Vec<f64>,
    /// `|r − R_n| / c`, s.
    pub retard_n: Vec<f64>,
    /// `(r − R_n)/|r − R_n|`.
    pub unit_n: Vec<[f64; 3]>,
}

impl EmissionGeometry {
    /// Geometry for `n` atoms spaced by `a` meters, dipole angle `phi`, and
    /// observer at distance `obs_x` meters.
    pub fn new(n: usize, a: f64, phi: f64, obs_x: f64) -> Result<Self> {
        if !(obs_x > 0.0 && obs_x.is_finite()) {
            return Err(Error::Domain(format!(
                "observation distance must be positive, got {obs_x} m"
            )));
        }
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("lattice constant must be non-negative, got {a} m")));
        }
        if n == 0 {
            return Err(Error::Domain("emission geometry needs at least one atom".into()));
        }
        let atom_z: Vec<f64> = (0..n).map(|k| k as f64 * a).collect();
        let mut phi_n = Vec::with_capacity(n);
        let mut dist_n = Vec::with_capacity(n);
        let mut retard_n = Vec::with_capacity(n);
        let mut unit_n = Vec::with_capacity(n);
        for &r in &atom_z {
            // atan2 gives α = π/2 exactly at R = 0.
            let alpha = obs_x.atan2(r);
            let d = obs_x.hypot(r);
            phi_n.push(PI - phi - alpha);
            dist_n.push(d);
            retard_n.push(d / SPEED_OF_LIGHT);
            unit_n.push([obs_x / d, 0.0, -r / d]);
        }
        Ok(Self {
            obs_x,
            phi,
            atom_z,
            phi_n,
            dist_n,
            retard_n,
            unit_n,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.atom_z.len()
    }

    /// Latest retarded time; observations must not precede it.
    pub fn max_retard(&self) -> f64 {
        self.retard_n.iter().copied().fold(0.0, f64::max)
    }

    /// `t_i − t_j`, evaluated as `(R_i² − R_j²) / ((d_i + d_j) c)` to avoid
    /// cancelling two nearly equal distances.
    pub fn retard_difference(&self, i: usize, j: usize) -> f64 {
        let (ri, rj) = (self.atom_z[i], self.atom_z[j]);
        (ri - rj) * (ri + rj) / ((self.dist_n[i] + self.dist_n[j]) * SPEED_OF_LIGHT)
    }

    /// Lattice constant recovered from the atom positions.
    pub fn lattice_const(&self) -> f64 {
        self.atom_z.get(1).copied().unwrap_or(0.0)
    }
}

/// Geometry for the chain described by `config`, observed at `obs_x`.
/// Logs a warning when the observer is not in the far zone (`x < 10 λ_A`).
pub fn build_geometry(config: &ChainConfig, obs_x: f64) -> Result<EmissionGeometry> {
    let geom = EmissionGeometry::new(
        config.n_atoms(),
        config.lattice_const(),
        config.polarization_angle(),
        obs_x,
    )?;
    let lambda = derive_scales(config).lambda_a;
    if obs_x < 10.0 * lambda {
        warn!(
            "observation distance {obs_x:e} m is within 10 wavelengths ({:e} m); \
             the far-zone field is assumed",
            10.0 * lambda
        );
    }
    Ok(geom)
}

/// `I₀(x) = μ²ω_A⁴ / (16π² ε₀ c³ x²)` in W/m².
pub fn reference_intensity(dipole_moment: f64, omega_a: f64, obs_x: f64) -> f64 {
    dipole_moment * dipole_moment * omega_a.powi(4)
        / (16.0 * PI * PI * EPSILON_0 * SPEED_OF_LIGHT.powi(3) * obs_x * obs_x)
}

fn check_causality(geom: &EmissionGeometry, t: f64) -> Result<()> {
    let latest = geom.max_retard();
    if t >= latest {
        Ok(())
    } else {
        Err(Error::Causality {
            t,
            retarded: latest,
            context: None,
        })
    }
}

fn check_state(state: &SignState, geom: &EmissionGeometry) -> Result<()> {
    if state.len() == geom.n_atoms() {
        Ok(())
    } else {
        Err(Error::State(format!(
            "state has {} sites but the geometry has {} atoms",
            state.len(),
            geom.n_atoms()
        )))
    }
}

/// Per-atom terms `I_i/I₀ = (1/2)(x² sin²φ_i / d_i²) ⟨B_i†B_i⟩ e^{−Γ_A(t − t_i)}`.
pub fn individual_intensities(
    state: &SignState,
    geom: &EmissionGeometry,
    scales: &AtomicScales,
    t: f64,
) -> Result<Vec<f64>> {
    check_state(state, geom)?;
    check_causality(geom, t)?;
    let corr = pair_correlations(state);
    let x2 = geom.obs_x * geom.obs_x;
    Ok((0..geom.n_atoms())
        .map(|i| {
            let s = geom.phi_n[i].sin();
            let d = geom.dist_n[i];
            0.5 * x2 * s * s / (d * d)
                * corr.get(i, i)
                * (-scales.gamma_a * (t - geom.retard_n[i])).exp()
        })
        .collect())
}

// With rank-one correlations C_iC_j/N the direct and interference terms
// combine into |Σ_i C_i v_i|²/2N, where v_i is atom i's transverse field
// amplitude with phase ω(t_i − t_1). Summing fields instead of intensities
// avoids squaring the cancellation in dark configurations.
fn intensity_ratio(state: &SignState, geom: &EmissionGeometry, scales: &AtomicScales, t: f64) -> Result<f64> {
    check_state(state, geom)?;
    check_causality(geom, t)?;
    // sin(π/2 − φ) vanishes exactly for a perpendicular dipole.
    let (sin_phi, cos_phi) = (geom.phi.sin(), (FRAC_PI_2 - geom.phi).sin());
    let mut field = [[0.0f64; 2]; 2];
    for (i, &c) in state.coeffs().iter().enumerate() {
        let d = geom.dist_n[i];
        let (cos_b, sin_b) = (geom.obs_x / d, geom.atom_z[i] / d);
        // sin of the dipole/line-of-sight angle, signed along (sin β, 0, cos β).
        let transverse = cos_phi * cos_b + sin_phi * sin_b;
        let amp = f64::from(c) * cos_b * transverse
            * (-0.5 * scales.gamma_a * (t - geom.retard_n[i])).exp();
        let (sin_p, cos_p) = (scales.omega_a * geom.retard_difference(i, 0)).sin_cos();
        for (k, dir) in [sin_b, cos_b].into_iter().enumerate() {
            field[k][0] += amp * dir * cos_p;
            field[k][1] += amp * dir * sin_p;
        }
    }
    let norm2: f64 = field.iter().flatten().map(|v| v * v).sum();
    Ok(0.5 * norm2 / geom.n_atoms() as f64)
}

/// Total retarded intensity `Σ_i I_i + Σ_{i≠j} G_ij` scaled by `I₀(x)`,
/// assuming every correlator decays at the single-atom rate.
///
/// Logs a warning when `q_A·a < 1`, where the atoms are not independent.
pub fn total_intensity(
    state: &SignState,
    geom: &EmissionGeometry,
    scales: &AtomicScales,
    t: f64,
) -> Result<f64> {
    warn_if_coupled(scales, geom.lattice_const());
    intensity_ratio(state, geom, scales, t)
}

fn warn_if_coupled(scales: &AtomicScales, a: f64) {
    if geom_is_coupled(scales, a) {
        warn!(
            "q_A·a = {:.3} < 1: independent-atom emission model applied outside its regime",
            scales.q_a * a
        );
    }
}

fn geom_is_coupled(scales: &AtomicScales, a: f64) -> bool {
    a > 0.0 && scales.q_a * a < 1.0
}

/// Symmetric `(+,+)` or antisymmetric `(+,−)` two-atom state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairState {
    Symmetric,
    Antisymmetric,
}

impl PairState {
    fn cross_sign(self) -> f64 {
        match self {
            PairState::Symmetric => 1.0,
            PairState::Antisymmetric => -1.0,
        }
    }

    pub fn to_sign_state(self) -> SignState {
        match self {
            PairState::Symmetric => SignState::symmetric(2),
            PairState::Antisymmetric => SignState::alternating(2),
        }
        .expect("two sites")
    }
}

/// Closed two-atom intensity with atom 1 at the origin and atom 2 at `a`:
///
/// ```text
/// I/I₀ = ¼ { sin²φ₁ e^{−Γ(t − x/c)} + x² sin²φ₂/(x² + a²) e^{−Γ(t − √(x²+a²)/c)}
///          ± x² sinφ₁ sinφ₂/(x² + a²) · 2cos[ω(x − √(x²+a²))/c] e^{−Γ[t − (x + √(x²+a²))/2c]} }
/// ```
pub fn two_atom_intensity(
    pair: PairState,
    a: f64,
    phi: f64,
    obs_x: f64,
    t: f64,
    scales: &AtomicScales,
) -> Result<f64> {
    let geom = EmissionGeometry::new(2, a, phi, obs_x)?;
    check_causality(&geom, t)?;
    let c = SPEED_OF_LIGHT;
    let (x, g, w) = (obs_x, scales.gamma_a, scales.omega_a);
    let d2 = x.hypot(a);
    // x − √(x² + a²), rearranged to avoid cancellation.
    let path_diff = -a * a / (x + d2);
    // Angle subtended by the lattice constant: x/d₂ = cos δ, sin φ₂ = cos(φ − δ).
    let delta = a.atan2(x);
    let (sin_d, cos_d) = delta.sin_cos();
    let e1 = (-0.5 * g * (t - x / c)).exp();
    let e2 = (-0.5 * g * (t - d2 / c)).exp();
    // The braces above read A² + B² ± 2AB·cos δ·cos θ.
    let big_a = (FRAC_PI_2 - phi).sin() * e1;
    let big_b = cos_d * (phi - delta).cos() * e2;
    let theta = w * (path_diff / c);
    let kappa = pair.cross_sign() * cos_d * theta.cos();
    let brace = if big_a > 0.0 && big_b > 0.0 && kappa < 0.0 {
        // (A − B)² + 2AB(1 − |κ|) with both factors free of cancellation.
        let geometric = sin_d * (delta - phi).sin() * e1;
        let decay = cos_d * (phi - delta).cos() * e2 * (-0.5 * g * (-path_diff) / c).exp_m1();
        let a_minus_b = geometric + decay;
        let half = 0.5 * theta;
        let one_minus_cos = if theta.cos() > 0.0 { 2.0 * half.sin().powi(2) } else { 2.0 * half.cos().powi(2) };
        let one_minus_kappa = 2.0 * (0.5 * delta).sin().powi(2) + cos_d * one_minus_cos;
        a_minus_b * a_minus_b + 2.0 * big_a * big_b * one_minus_kappa
    } else {
        big_a * big_a + big_b * big_b + 2.0 * big_a * big_b * kappa
    };
    Ok(0.25 * brace)
}

/// Small-lattice (`x ≫ a`) form of [`two_atom_intensity`]:
///
/// ```text
/// I/I₀ ≈ ¼ cos²φ e^{−Γ(t − x/c)} { 1 + e^{Γa²/2cx} ± 2cos(ω a²/2cx) e^{Γa²/4cx} }
/// ```
pub fn two_atom_asymptotic(
    pair: PairState,
    a: f64,
    phi: f64,
    obs_x: f64,
    t: f64,
    scales: &AtomicScales,
) -> Result<f64> {
    if !(obs_x > 0.0 && obs_x.is_finite()) {
        return Err(Error::Domain(format!(
            "observation distance must be positive, got {obs_x} m"
        )));
    }
    let c = SPEED_OF_LIGHT;
    let (g, w) = (scales.gamma_a, scales.omega_a);
    let delay = a * a / (2.0 * c * obs_x);
    let brace = 1.0
        + (g * delay).exp()
        + pair.cross_sign() * 2.0 * (w * delay).cos() * (g * delay / 2.0).exp();
    Ok(0.25 * phi.cos().powi(2) * (-g * (t - obs_x / c)).exp() * brace)
}

/// What an emission sweep varies.
#[derive(Debug, Clone, PartialEq)]
pub enum EmissionAxis {
    /// Lattice constants in meters at a fixed observation time in seconds.
    LatticeConst { values: Vec<f64>, t: f64 },
    /// Observation times in seconds at the configured lattice constant.
    Time { values: Vec<f64> },
}

/// Ordered `(grid value, I/I₀)` pairs plus the reference intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityTrace {
    pub rows: Vec<(f64, f64)>,
    /// `I₀(x)` in W/m².
    pub reference_intensity: f64,
    pub axis_is_time: bool,
    pub metadata: Vec<(String, String)>,
}

impl IntensityTrace {
    /// CSV form: `a_angstrom,intensity_ratio` or `t_s,intensity_ratio`.
    pub fn to_table(&self) -> SweepTable {
        let first = if self.axis_is_time { "t_s" } else { "a_angstrom" };
        let mut table = SweepTable::new(vec![first.into(), "intensity_ratio".into()]);
        table.extend_metadata(self.metadata.iter().cloned());
        for &(g, v) in &self.rows {
            let g = if self.axis_is_time { g } else { meters_to_angstrom(g) };
            table.push_row(vec![g, v]);
        }
        table
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.1).collect()
    }
}

/// `I/I₀` for `state` across `axis`, with chain parameters from `config`.
///
/// Every grid point must satisfy causality; the first violation is
/// reported with its grid value.
pub fn emission_sweep(
    state: &SignState,
    config: &ChainConfig,
    obs_x: f64,
    axis: &EmissionAxis,
) -> Result<IntensityTrace> {
    let scales = derive_scales(config);
    let base = build_geometry(config, obs_x)?;
    check_state(state, &base)?;
    let phi = config.polarization_angle();
    let mut metadata = vec![
        ("state".to_string(), state.to_string()),
        ("phi_deg".to_string(), trim_degrees(phi.to_degrees())),
        ("x_angstrom".to_string(), format!("{:e}", meters_to_angstrom(obs_x))),
    ];
    let mut rows = Vec::new();
    let mut coupled = false;
    match axis {
        EmissionAxis::LatticeConst { values, t } => {
            if values.is_empty() {
                return Err(Error::Domain("emission sweep grid is empty".into()));
            }
            metadata.push(("t_s".into(), format!("{t:e}")));
            for &a in values {
                let geom = EmissionGeometry::new(state.len(), a, phi, obs_x)?;
                coupled |= state.len() > 1 && geom_is_coupled(&scales, a);
                let v = intensity_ratio(state, &geom, &scales, *t)
                    .map_err(|e| locate(e, format!("a = {:e} Å", meters_to_angstrom(a))))?;
                rows.push((a, v));
            }
        }
        EmissionAxis::Time { values } => {
            if values.is_empty() {
                return Err(Error::Domain("emission sweep grid is empty".into()));
            }
            coupled = state.len() > 1 && geom_is_coupled(&scales, config.lattice_const());
            for &t in values {
                let v = intensity_ratio(state, &base, &scales, t)
                    .map_err(|e| locate(e, format!("t = {t:e} s")))?;
                rows.push((t, v));
            }
        }
    }
    if coupled {
        warn!("part of the sweep has q_A·a < 1; the independent-atom emission model is assumed");
    }
    metadata.extend(config.metadata());
    metadata.push(("gamma_a_hz".into(), format!("{:e}", scales.gamma_a)));
    Ok(IntensityTrace {
        rows,
        reference_intensity: reference_intensity(config.dipole_moment(), scales.omega_a, obs_x),
        axis_is_time: matches!(axis, EmissionAxis::Time { .. }),
        metadata,
    })
}

fn locate(err: Error, point: String) -> Error {
    match err {
        Error::Causality { t, retarded, .. } => Error::Causality {
            t,
            retarded,
            context: Some(point),
        },
        other => other,
    }
}
