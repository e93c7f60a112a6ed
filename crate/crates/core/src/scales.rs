//! Chain configuration and the single-atom scales derived from it.
//!
//! Everything is stored in SI internally. The JSON configuration format and
//! the lab-unit constructor accept ångström, eV, e·Å and degrees.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::constants::{
    ANGSTROM, ELECTRONVOLT, EPSILON_0, E_ANGSTROM, HBAR, PLANCK, SPEED_OF_LIGHT,
};
use crate::error::{Error, Result};

/// Physical description of a uniform chain of identical two-level emitters.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    n_atoms: usize,
    lattice_const: f64,
    transition_energy: f64,
    dipole_moment: f64,
    polarization_angle: f64,
    gamma_override: Option<f64>,
}

impl ChainConfig {
    /// Builds a configuration from SI quantities: lattice constant in m,
    /// transition energy in J, dipole moment in C·m, polarization angle in
    /// radians and an optional single-atom decay rate in s⁻¹.
    ///
    /// The polarization angle is folded into `[0, π/2]`; only `cos²φ`
    /// enters any observable.
    pub fn new(
        n_atoms: usize,
        lattice_const: f64,
        transition_energy: f64,
        dipole_moment: f64,
        polarization_angle: f64,
        gamma_override: Option<f64>,
    ) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::Config("n_atoms must be at least 1".into()));
        }
        check_positive("lattice constant", lattice_const)?;
        check_positive("transition energy", transition_energy)?;
        check_positive("dipole moment", dipole_moment)?;
        if !polarization_angle.is_finite() {
            return Err(Error::Config("polarization angle must be finite".into()));
        }
        if let Some(g) = gamma_override {
            check_positive("gamma override", g)?;
        }
        Ok(Self {
            n_atoms,
            lattice_const,
            transition_energy,
            dipole_moment,
            polarization_angle: fold_polarization(polarization_angle),
            gamma_override,
        })
    }

    /// Builds a configuration from the units the literature quotes: Å, eV,
    /// e·Å, degrees and Hz.
    pub fn from_lab_units(
        n_atoms: usize,
        lattice_const_angstrom: f64,
        transition_energy_ev: f64,
        dipole_e_angstrom: f64,
        polarization_deg: f64,
        gamma_override_hz: Option<f64>,
    ) -> Result<Self> {
        Self::new(
            n_atoms,
            angstrom_to_meters(lattice_const_angstrom),
            transition_energy_ev * ELECTRONVOLT,
            dipole_e_angstrom * E_ANGSTROM,
            polarization_deg.to_radians(),
            gamma_override_hz,
        )
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Lattice constant in meters.
    pub fn lattice_const(&self) -> f64 {
        self.lattice_const
    }

    /// Transition energy in joules.
    pub fn transition_energy(&self) -> f64 {
        self.transition_energy
    }

    /// Transition dipole magnitude in C·m.
    pub fn dipole_moment(&self) -> f64 {
        self.dipole_moment
    }

    /// Angle between the transition dipole and the chain axis, in `[0, π/2]`.
    pub fn polarization_angle(&self) -> f64 {
        self.polarization_angle
    }

    pub fn gamma_override(&self) -> Option<f64> {
        self.gamma_override
    }

    pub fn with_n_atoms(&self, n_atoms: usize) -> Result<Self> {
        Self::new(
            n_atoms,
            self.lattice_const,
            self.transition_energy,
            self.dipole_moment,
            self.polarization_angle,
            self.gamma_override,
        )
    }

    pub fn with_lattice_const(&self, lattice_const: f64) -> Result<Self> {
        Self::new(
            self.n_atoms,
            lattice_const,
            self.transition_energy,
            self.dipole_moment,
            self.polarization_angle,
            self.gamma_override,
        )
    }

    pub fn with_polarization(&self, polarization_angle: f64) -> Result<Self> {
        Self::new(
            self.n_atoms,
            self.lattice_const,
            self.transition_energy,
            self.dipole_moment,
            polarization_angle,
            self.gamma_override,
        )
    }

    /// Key/value pairs describing the configuration in lab units.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("n_atoms".to_string(), self.n_atoms.to_string()),
            (
                "lattice_const_angstrom".to_string(),
                format!("{:e}", meters_to_angstrom(self.lattice_const)),
            ),
            (
                "transition_energy_ev".to_string(),
                format!("{:e}", self.transition_energy / ELECTRONVOLT),
            ),
            (
                "dipole_e_angstrom".to_string(),
                format!("{:e}", self.dipole_moment / E_ANGSTROM),
            ),
            (
                "polarization_deg".to_string(),
                format!("{:e}", self.polarization_angle.to_degrees()),
            ),
        ];
        if let Some(g) = self.gamma_override {
            out.push(("gamma_override_hz".to_string(), format!("{g:e}")));
        }
        out
    }
}

impl Default for ChainConfig {
    /// Two atoms, a = 1000 Å, E_A = 1 eV, μ = 1 e·Å, φ = 0.
    fn default() -> Self {
        Self::from_lab_units(2, 1000.0, 1.0, 1.0, 0.0, None).expect("default config is valid")
    }
}

fn check_positive(what: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} must be positive and finite, got {value}")))
    }
}

/// Reduces an angle to `[0, π/2]` using the symmetry of `cos²φ`.
pub fn fold_polarization(phi: f64) -> f64 {
    let mut p = phi.abs() % PI;
    if p > FRAC_PI_2 {
        p = PI - p;
    }
    p
}

pub fn angstrom_to_meters(a: f64) -> f64 {
    a * ANGSTROM
}

pub fn meters_to_angstrom(m: f64) -> f64 {
    m / ANGSTROM
}

/// Where the single-atom decay rate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSource {
    /// Evaluated from the dipole moment and transition frequency.
    DipoleFormula,
    /// Supplied by the caller, replacing the dipole formula.
    Override,
}

/// Single-atom quantities derived from a [`ChainConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicScales {
    /// Transition angular frequency, rad/s.
    pub omega_a: f64,
    /// Transition wavenumber, 1/m.
    pub q_a: f64,
    /// Transition wavelength, m.
    pub lambda_a: f64,
    /// Single excited atom decay rate, s⁻¹.
    pub gamma_a: f64,
    pub gamma_source: GammaSource,
}

/// Spontaneous decay rate of one isolated atom,
/// `Γ_A = ω_A³ μ² / (3π ε₀ ħ c³)`.
pub fn single_atom_decay_rate(omega_a: f64, dipole_moment: f64) -> f64 {
    omega_a.powi(3) * dipole_moment * dipole_moment
        / (3.0 * PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3))
}

pub fn derive_scales(config: &ChainConfig) -> AtomicScales {
    let energy = config.transition_energy;
    let omega_a = energy / HBAR;
    let q_a = energy / (HBAR * SPEED_OF_LIGHT);
    let lambda_a = PLANCK * SPEED_OF_LIGHT / energy;
    let (gamma_a, gamma_source) = match config.gamma_override {
        Some(g) => (g, GammaSource::Override),
        None => (
            single_atom_decay_rate(omega_a, config.dipole_moment),
            GammaSource::DipoleFormula,
        ),
    };
    AtomicScales {
        omega_a,
        q_a,
        lambda_a,
        gamma_a,
        gamma_source,
    }
}

/// The lattice constant in units of the inverse transition wavenumber, `q_A·a`.
pub fn dimensionless_separation(config: &ChainConfig) -> f64 {
    derive_scales(config).q_a * config.lattice_const
}

/// On-disk JSON form of a [`ChainConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n_atoms: usize,
    pub lattice_const_angstrom: f64,
    pub transition_energy_ev: f64,
    pub dipole_e_angstrom: f64,
    pub polarization_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_override_hz: Option<f64>,
}

impl Default for ConfigFile {
    fn default() -> Self {
        Self {
            n_atoms: 2,
            lattice_const_angstrom: 1000.0,
            transition_energy_ev: 1.0,
            dipole_e_angstrom: 1.0,
            polarization_deg: 0.0,
            gamma_override_hz: None,
        }
    }
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Applies a `key=value` override using the JSON key names.
    /// `gamma_override_hz=none` clears the override.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let parse_f64 = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?} as a number")))
        };
        match key.trim() {
            "n_atoms" => {
                self.n_atoms = value.trim().parse().map_err(|_| {
                    Error::Config(format!("n_atoms: cannot parse {value:?} as an integer"))
                })?
            }
            "lattice_const_angstrom" => self.lattice_const_angstrom = parse_f64(value)?,
            "transition_energy_ev" => self.transition_energy_ev = parse_f64(value)?,
            "dipole_e_angstrom" => self.dipole_e_angstrom = parse_f64(value)?,
            "polarization_deg" => self.polarization_deg = parse_f64(value)?,
            "gamma_override_hz" => {
                self.gamma_override_hz = match value.trim() {
                    "" | "none" | "null" => None,
                    v => Some(parse_f64(v)?),
                }
            }
            other => return Err(Error::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    pub fn to_config(&self) -> Result<ChainConfig> {
        ChainConfig::from_lab_units(
            self.n_atoms,
            self.lattice_const_angstrom,
            self.transition_energy_ev,
            self.dipole_e_angstrom,
            self.polarization_deg,
            self.gamma_override_hz,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn one_ev(a_angstrom: f64) -> ChainConfig {
        ChainConfig::from_lab_units(2, a_angstrom, 1.0, 1.0, 0.0, None).unwrap()
    }

    #[test]
    fn one_ev_wavelength_and_wavenumber() {
        let s = derive_scales(&one_ev(1000.0));
        // Quoted as ≈ 12405 Å with rounder constants; CODATA gives 12398.4 Å.
        assert_relative_eq!(meters_to_angstrom(s.lambda_a), 12405.0, max_relative = 1e-3);
        assert_relative_eq!(meters_to_angstrom(s.lambda_a), 12_398.419_843_320_026, max_relative = 1e-13);
        assert_relative_eq!(s.q_a * ANGSTROM, 4e-4, max_relative = 0.3);
        assert_relative_eq!(s.q_a * s.lambda_a, 2.0 * PI, max_relative = 1e-12);
    }

    #[test]
    fn separation_at_1000_angstrom() {
        let cfg = one_ev(1000.0);
        let x = dimensionless_separation(&cfg);
        assert!((x - 0.5).abs() < 0.01, "q_A a = {x}");
        let s = derive_scales(&cfg);
        assert!((cfg.lattice_const() / s.lambda_a - 0.08).abs() < 0.005);
        // Frozen against a 40-digit evaluation.
        assert_relative_eq!(x, 0.506_773_071_615_639_6, max_relative = 1e-12);
    }

    #[test]
    fn separation_doubles_with_energy() {
        let cfg = ChainConfig::from_lab_units(2, 1000.0, 2.0, 1.0, 0.0, None).unwrap();
        let x = dimensionless_separation(&cfg);
        assert!((x - 1.0).abs() < 0.02);
        assert_relative_eq!(x, 2.0 * dimensionless_separation(&one_ev(1000.0)), max_relative = 1e-14);
    }

    #[test]
    fn separation_vanishes_with_lattice_const() {
        let x = dimensionless_separation(&one_ev(1e-12));
        assert!(x < 1e-15);
    }

    #[test]
    fn gamma_from_dipole_formula() {
        let s = derive_scales(&one_ev(1000.0));
        assert_eq!(s.gamma_source, GammaSource::DipoleFormula);
        // 40-digit reference: 3796342.259403257...
        assert_relative_eq!(s.gamma_a, 3_796_342.250_098_89, max_relative = 1e-12);
        assert!((s.gamma_a / 3.8e6 - 1.0).abs() < 0.01);
    }

    #[test]
    fn gamma_override_replaces_formula() {
        let cfg = ChainConfig::from_lab_units(2, 1000.0, 1.0, 1.0, 0.0, Some(1e8)).unwrap();
        let s = derive_scales(&cfg);
        assert_eq!(s.gamma_a, 1e8);
        assert_eq!(s.gamma_source, GammaSource::Override);
    }

    #[test]
    fn override_with_formula_value_is_indistinguishable() {
        let base = derive_scales(&one_ev(1000.0));
        let cfg =
            ChainConfig::from_lab_units(2, 1000.0, 1.0, 1.0, 0.0, Some(base.gamma_a)).unwrap();
        let s = derive_scales(&cfg);
        assert_eq!(s.gamma_a, base.gamma_a);
        assert_eq!(s.omega_a, base.omega_a);
        assert_eq!(s.q_a, base.q_a);
        assert_eq!(s.lambda_a, base.lambda_a);
    }

    #[test]
    fn gamma_scales_as_energy_cubed_and_dipole_squared() {
        let g1 = derive_scales(&one_ev(1000.0)).gamma_a;
        let g2 = derive_scales(&ChainConfig::from_lab_units(2, 1000.0, 2.0, 1.0, 0.0, None).unwrap())
            .gamma_a;
        let g3 = derive_scales(&ChainConfig::from_lab_units(2, 1000.0, 1.0, 2.0, 0.0, None).unwrap())
            .gamma_a;
        assert_relative_eq!(g2 / g1, 8.0, max_relative = 1e-12);
        assert_relative_eq!(g3 / g1, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(ChainConfig::from_lab_units(0, 1000.0, 1.0, 1.0, 0.0, None).is_err());
        assert!(ChainConfig::from_lab_units(2, 0.0, 1.0, 1.0, 0.0, None).is_err());
        assert!(ChainConfig::from_lab_units(2, 1.0, -1.0, 1.0, 0.0, None).is_err());
        assert!(ChainConfig::from_lab_units(2, 1.0, 1.0, 0.0, 0.0, None).is_err());
        assert!(ChainConfig::from_lab_units(2, 1.0, 1.0, 1.0, f64::NAN, None).is_err());
        assert!(ChainConfig::from_lab_units(2, 1.0, 1.0, 1.0, 0.0, Some(0.0)).is_err());
    }

    #[test]
    fn polarization_folds_into_first_quadrant() {
        for (deg, folded) in [(0.0, 0.0), (90.0, 90.0), (120.0, 60.0), (-30.0, 30.0), (180.0, 0.0), (210.0, 30.0)] {
            let p = fold_polarization(f64::to_radians(deg));
            assert!((p.to_degrees() - folded).abs() < 1e-9, "{deg} -> {}", p.to_degrees());
            assert!((0.0..=FRAC_PI_2).contains(&p));
        }
        assert_eq!(fold_polarization(90f64.to_radians()), FRAC_PI_2);
    }

    #[test]
    fn json_round_trip_and_overrides() {
        let text = r#"{"n_atoms": 5, "lattice_const_angstrom": 2000, "transition_energy_ev": 1.5,
                       "dipole_e_angstrom": 2, "polarization_deg": 45, "gamma_override_hz": 1e8}"#;
        let mut file = ConfigFile::from_json(text).unwrap();
        assert_eq!(file.n_atoms, 5);
        assert_eq!(file.gamma_override_hz, Some(1e8));
        assert_eq!(ConfigFile::from_json(&file.to_json()).unwrap(), file);

        file.apply_override("n_atoms", "7").unwrap();
        file.apply_override("gamma_override_hz", "none").unwrap();
        file.apply_override("polarization_deg", "90").unwrap();
        let cfg = file.to_config().unwrap();
        assert_eq!(cfg.n_atoms(), 7);
        assert_eq!(cfg.gamma_override(), None);
        assert_eq!(cfg.polarization_angle(), FRAC_PI_2);
        assert_relative_eq!(cfg.lattice_const(), 2000e-10, max_relative = 1e-15);

        assert!(file.apply_override("bogus", "1").is_err());
        assert!(file.apply_override("n_atoms", "two").is_err());
        assert!(ConfigFile::from_json(r#"{"n_atoms": 2}"#).is_err());
        assert!(ConfigFile::from_json(r#"{"n_atoms": 2, "lattice_const_angstrom": 1,
            "transition_energy_ev": 1, "dipole_e_angstrom": 1, "polarization_deg": 0, "extra": 1}"#)
            .is_err());
    }

    #[test]
    fn optional_override_key_may_be_omitted() {
        let text = r#"{"n_atoms": 3, "lattice_const_angstrom": 500, "transition_energy_ev": 1,
                       "dipole_e_angstrom": 1, "polarization_deg": 0}"#;
        let cfg = ConfigFile::from_json(text).unwrap().to_config().unwrap();
        assert_eq!(cfg.gamma_override(), None);
        assert_eq!(cfg.n_atoms(), 3);
    }

    proptest::proptest! {
        #[test]
        fn angstrom_round_trip(a in 1e-3f64..1e9) {
            let back = meters_to_angstrom(angstrom_to_meters(a));
            proptest::prop_assert!(((back - a) / a).abs() <= 1e-12);
        }

        #[test]
        fn scales_invariants(e in 0.01f64..20.0, mu in 0.01f64..20.0) {
            let cfg = ChainConfig::from_lab_units(1, 1000.0, e, mu, 0.0, None).unwrap();
            let s = derive_scales(&cfg);
            proptest::prop_assert!(((s.q_a * s.lambda_a) / (2.0 * PI) - 1.0).abs() <= 1e-12);
            proptest::prop_assert!(s.gamma_a > 0.0);
        }
    }
}
