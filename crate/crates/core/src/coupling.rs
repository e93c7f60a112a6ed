//! Resonant energy transfer between two emitters and the chain coupling
//! matrix.
//!
//! All transfer functions return `J/Γ_A` as a function of the dimensionless
//! separation `x = q_A·R` and the polarization angle `φ` between the
//! transition dipole and the chain axis.

use crate::error::{Error, Result};
use crate::scales::{derive_scales, dimensionless_separation, ChainConfig};
use crate::sweep::{linspace, phi_label, SweepTable};

/// Below this separation the near-field bracket is evaluated from its
/// Laurent expansion.
pub const LAURENT_THRESHOLD: f64 = 1e-3;

fn check_separation(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "dipole coupling needs a positive finite separation, got q_A·R = {x}"
        )))
    }
}

/// `sin x/x² + cos x/x³`.
fn near_field_bracket(x: f64) -> f64 {
    if x < LAURENT_THRESHOLD {
        near_field_bracket_laurent(x)
    } else {
        near_field_bracket_direct(x)
    }
}

pub(crate) fn near_field_bracket_direct(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    s / (x * x) + c / (x * x * x)
}

/// `1/x³ + 1/(2x) − x/8 + x³/144`; the next term is `−x⁵/5760`.
pub(crate) fn near_field_bracket_laurent(x: f64) -> f64 {
    let x2 = x * x;
    1.0 / (x2 * x) + 0.5 / x + x * (-1.0 / 8.0 + x2 / 144.0)
}

/// Full retarded transfer rate `J/Γ_A`:
///
/// `(3/4){ [sin x/x² + cos x/x³](1 − 3cos²φ) − (cos x/x)(1 − cos²φ) }`
pub fn transfer_exact(x: f64, phi: f64) -> Result<f64> {
    check_separation(x)?;
    let c2 = phi.cos().powi(2);
    Ok(0.75 * (near_field_bracket(x) * (1.0 - 3.0 * c2) - x.cos() / x * (1.0 - c2)))
}

/// Electrostatic (resonance dipole-dipole) limit `(3/4)(1 − 3cos²φ)/x³`.
pub fn transfer_electrostatic(x: f64, phi: f64) -> Result<f64> {
    check_separation(x)?;
    let c2 = phi.cos().powi(2);
    Ok(0.75 * (1.0 - 3.0 * c2) / (x * x * x))
}

/// Single-excitation Hamiltonian of the chain in the site basis: identical
/// on-site frequency `ω_A` and symmetric off-diagonal transfer rates `J_nm`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    dim: usize,
    diagonal: f64,
    off_diag: Vec<f64>,
}

impl CouplingMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// On-site angular frequency ω_A in rad/s.
    pub fn diagonal(&self) -> f64 {
        self.diagonal
    }

    /// Transfer rate `J_nm` in s⁻¹ (zero on the diagonal).
    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.off_diag[n * self.dim + m]
    }

    /// Row-major off-diagonal block.
    pub fn off_diag(&self) -> &[f64] {
        &self.off_diag
    }

    /// Keeps only nearest-neighbour transfer.
    pub fn nearest_neighbor(&self) -> Self {
        let mut out = self.clone();
        for n in 0..self.dim {
            for m in 0..self.dim {
                if n.abs_diff(m) > 1 {
                    out.off_diag[n * self.dim + m] = 0.0;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|n| (0..self.dim).all(|m| self.get(n, m) == self.get(m, n)))
    }
}

/// Builds `J_nm = Γ_A · J(q_A·a·|n − m|)/Γ_A` for every pair of sites.
pub fn coupling_matrix(config: &ChainConfig) -> CouplingMatrix {
    let scales = derive_scales(config);
    let x = dimensionless_separation(config);
    let phi = config.polarization_angle();
    let dim = config.n_atoms();
    // One value per bond length keeps the matrix exactly Toeplitz.
    let bonds: Vec<f64> = (0..dim)
        .map(|k| match k {
            0 => 0.0,
            k => {
                scales.gamma_a
                    * transfer_exact(x * k as f64, phi).expect("positive separation")
            }
        })
        .collect();
    let mut off_diag = vec![0.0; dim * dim];
    for n in 0..dim {
        for m in 0..dim {
            off_diag[n * dim + m] = bonds[n.abs_diff(m)];
        }
    }
    CouplingMatrix {
        dim,
        diagonal: scales.omega_a,
        off_diag,
    }
}

/// Exact and electrostatic `J/Γ_A` on a uniform grid of `x` for each
/// polarization in `phis` (radians).
///
/// Columns: `x, J_exact_phi<deg>..., J_approx_phi<deg>...`.
pub fn coupling_sweep(x_min: f64, x_max: f64, n_points: usize, phis: &[f64]) -> Result<SweepTable> {
    if x_min <= 0.0 {
        return Err(Error::Domain(format!(
            "coupling sweep must stay away from zero separation, got x_min = {x_min}"
        )));
    }
    let grid = linspace(x_min, x_max, n_points)?;
    let mut columns = vec!["x".to_string()];
    columns.extend(phis.iter().map(|&p| format!("J_exact_{}", phi_label(p))));
    columns.extend(phis.iter().map(|&p| format!("J_approx_{}", phi_label(p))));
    let mut table = SweepTable::new(columns).with_metadata("quantity", "J/Gamma_A");
    for x in grid {
        let mut row = Vec::with_capacity(1 + 2 * phis.len());
        row.push(x);
        for &p in phis {
            row.push(transfer_exact(x, p)?);
        }
        for &p in phis {
            row.push(transfer_electrostatic(x, p)?);
        }
        table.push_row(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    const MAGIC: f64 = 0.955_316_618_124_509_3; // arccos(1/√3)

    #[test]
    fn quoted_anchors_at_half() {
        let j0 = transfer_exact(0.5, 0.0).unwrap();
        let j90 = transfer_exact(0.5, FRAC_PI_2).unwrap();
        assert!((j0 + 13.41).abs() <= 0.01, "{j0}");
        assert!((j90 - 5.39).abs() <= 0.01, "{j90}");
        // 40-digit references.
        assert!((j0 - -13.407_543_974_309_69).abs() < 1e-12);
        assert!((j90 - 5.387_398_144_319_286).abs() < 1e-12);
    }

    #[test]
    fn electrostatic_anchors() {
        assert!((transfer_electrostatic(0.5, 0.0).unwrap() + 12.0).abs() < 1e-12);
        assert!((transfer_electrostatic(0.5, FRAC_PI_2).unwrap() - 6.0).abs() < 1e-12);
        for x in [0.01, 0.3, 2.0, 40.0] {
            assert!(transfer_electrostatic(x, MAGIC).unwrap().abs() < 1e-12 / (x * x * x));
        }
    }

    #[test]
    fn non_positive_separation_is_a_domain_error() {
        assert!(matches!(transfer_exact(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(transfer_exact(-1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(transfer_electrostatic(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(coupling_sweep(0.0, 1.0, 10, &[0.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn far_field_envelope() {
        for phi in [0.0, 0.7, FRAC_PI_2] {
            for x in [50.0, 200.0, 1e4] {
                let j = transfer_exact(x, phi).unwrap();
                // |bracket| ≤ 1/x² + 1/x³, plus the 1/x radiative term.
                let bound = 0.75 * (2.0 * (1.0 / (x * x) + 1.0 / x.powi(3)) + 1.0 / x);
                assert!(j.abs() <= bound, "x={x} phi={phi} j={j}");
            }
        }
    }

    #[test]
    fn laurent_matches_direct_at_threshold() {
        let x = LAURENT_THRESHOLD;
        let a = near_field_bracket_laurent(x);
        let b = near_field_bracket_direct(x);
        assert!(((a - b) / b).abs() <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn small_separation_approaches_electrostatic() {
        for x in [1e-2, 1e-3, 1e-5] {
            let exact = transfer_exact(x, 0.0).unwrap();
            let approx = transfer_electrostatic(x, 0.0).unwrap();
            assert!(((exact - approx) / approx).abs() <= 1e-4, "x={x}");
        }
        let exact = transfer_exact(0.1, 0.0).unwrap();
        let approx = transfer_electrostatic(0.1, 0.0).unwrap();
        assert!(((exact - approx) / approx).abs() < 0.02);
    }

    #[test]
    fn depends_only_on_cos_squared() {
        for x in [0.05, 0.5, 3.0, 17.0] {
            for phi in [0.1, 0.6, 1.2] {
                let a = transfer_exact(x, phi).unwrap();
                assert!((a - transfer_exact(x, -phi).unwrap()).abs() <= 1e-12 * a.abs().max(1.0));
                assert!((a - transfer_exact(x, PI - phi).unwrap()).abs() <= 1e-12 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn single_atom_matrix() {
        let cfg = ChainConfig::from_lab_units(1, 1000.0, 1.0, 1.0, 0.0, None).unwrap();
        let m = coupling_matrix(&cfg);
        assert_eq!(m.dim(), 1);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn pair_matrix_matches_transfer() {
        // E_A = 1 eV, a = 1000 Å gives q_A·a ≈ 0.507.
        let cfg = ChainConfig::from_lab_units(2, 1000.0, 1.0, 1.0, 0.0, None).unwrap();
        let m = coupling_matrix(&cfg);
        let scales = derive_scales(&cfg);
        let x = dimensionless_separation(&cfg);
        assert_eq!(m.get(0, 1), scales.gamma_a * transfer_exact(x, 0.0).unwrap());
        assert!((m.get(0, 1) / scales.gamma_a + 13.0).abs() < 0.5);
        assert_eq!(m.diagonal(), scales.omega_a);
    }

    #[test]
    fn chain_matrix_is_symmetric_toeplitz() {
        let cfg = ChainConfig::from_lab_units(9, 3000.0, 1.0, 1.0, 30.0, None).unwrap();
        let m = coupling_matrix(&cfg);
        assert!(m.is_symmetric());
        for n in 0..9 {
            assert_eq!(m.get(n, n), 0.0);
            for k in 1..9 - n {
                assert_eq!(m.get(n, n + k), m.get(0, k));
            }
        }
        let nn = m.nearest_neighbor();
        assert_eq!(nn.get(3, 4), m.get(3, 4));
        assert_eq!(nn.get(3, 5), 0.0);
        assert!(nn.is_symmetric());
    }

    #[test]
    fn sweep_layout_and_anchor_row() {
        let phis = [0.0, FRAC_PI_2];
        let t = coupling_sweep(0.1, 1.0, 10, &phis).unwrap();
        assert_eq!(
            t.columns,
            vec!["x", "J_exact_phi0", "J_exact_phi90", "J_approx_phi0", "J_approx_phi90"]
        );
        let row = t.rows.iter().find(|r| (r[0] - 0.5).abs() < 1e-12).unwrap();
        assert!((row[1] + 13.41).abs() < 0.01);
        assert!((row[2] - 5.39).abs() < 0.01);
        assert!((row[3] + 12.0).abs() < 1e-9);
        assert!((row[4] - 6.0).abs() < 1e-9);
        assert!(t.rows.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn sweep_far_columns() {
        let t = coupling_sweep(49.0, 50.0, 2, &[0.0]).unwrap();
        let last = t.rows.last().unwrap();
        assert_eq!(last[0], 50.0);
        assert!(last[2].abs() < 1e-4);
        assert!(last[1].abs() > last[2].abs());
    }

    proptest::proptest! {
        #[test]
        fn exact_tends_to_electrostatic(x in 1e-6f64..1e-2) {
            let e = transfer_exact(x, 0.0).unwrap();
            let a = transfer_electrostatic(x, 0.0).unwrap();
            proptest::prop_assert!(((e - a) / a).abs() <= 1e-4);
        }
    }
}
