//! Closed-form versus quadrature cross-check over every sign state.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::damping::{damping_general, damping_quadrature_oracle, relative_gap};
use crate::error::Result;
use crate::states::{enumerate_sign_states, SignState};
use crate::sweep::{trim_degrees, SweepTable};

/// Relative agreement required between the two routes.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    /// Chains of 1..=n_max sites are checked.
    pub n_max: usize,
    pub xs: Vec<f64>,
    /// Polarization angles in radians.
    pub phis: Vec<f64>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        Self {
            n_max: 8,
            xs: vec![0.1, 0.5, 1.0, 3.0, 10.0],
            phis: vec![0.0, FRAC_PI_4, FRAC_PI_2],
        }
    }
}

/// Worst disagreement over all sign states at one `(N, x, φ)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub n: usize,
    pub x: f64,
    pub phi: f64,
    pub states: usize,
    pub max_rel_err: f64,
    pub worst_state: SignState,
}

/// A single state/grid point outside tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyFailure {
    pub state_index: usize,
    pub grid_index: usize,
    pub state: SignState,
    pub x: f64,
    pub phi: f64,
    pub closed_form: f64,
    pub quadrature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub rows: Vec<VerifyRow>,
    /// Sorted by state index, then grid index.
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().map(|r| r.max_rel_err).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn comparisons(&self) -> usize {
        self.rows.iter().map(|r| r.states).sum()
    }

    /// Columns `N, x, phi_deg, states, max_rel_err`.
    pub fn to_table(&self) -> SweepTable {
        let mut table = SweepTable::new(
            ["N", "x", "phi_deg", "states", "max_rel_err"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
        .with_metadata("check", "closed_form_vs_quadrature")
        .with_metadata("tolerance", format!("{:e}", self.tolerance));
        for r in &self.rows {
            table.push_row(vec![r.n as f64, r.x, r.phi.to_degrees(), r.states as f64, r.max_rel_err]);
        }
        table.footer.push(("max_rel_err".into(), format!("{:e}", self.max_rel_err())));
        table.footer.push(("comparisons".into(), self.comparisons().to_string()));
        table.footer.push(("status".into(), if self.passed() { "pass" } else { "fail" }.into()));
        table
    }
}

/// Compares [`damping_general`] with [`damping_quadrature_oracle`] for every
/// sign state on every grid point.
pub fn run_verification(grid: &VerifyGrid, tolerance: f64) -> Result<VerifyReport> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=grid.n_max {
        let states = enumerate_sign_states(n)?;
        let mut grid_index = 0;
        for &x in &grid.xs {
            for &phi in &grid.phis {
                let mut worst = (0.0f64, 0usize);
                for (si, state) in states.iter().enumerate() {
                    let c = damping_general(state, x, phi)?.rate_ratio;
                    let q = damping_quadrature_oracle(state, x, phi)?.rate_ratio;
                    let gap = relative_gap(c, q);
                    if gap > worst.0 {
                        worst = (gap, si);
                    }
                    if gap > tolerance {
                        failures.push(VerifyFailure {
                            state_index: si,
                            grid_index,
                            state: state.clone(),
                            x,
                            phi,
                            closed_form: c,
                            quadrature: q,
                        });
                    }
                }
                rows.push(VerifyRow {
                    n,
                    x,
                    phi,
                    states: states.len(),
                    max_rel_err: worst.0,
                    worst_state: states[worst.1].clone(),
                });
                grid_index += 1;
            }
        }
    }
    failures.sort_by_key(|f| (f.state.len(), f.state_index, f.grid_index));
    Ok(VerifyReport {
        tolerance,
        rows,
        failures,
    })
}

impl std::fmt::Display for VerifyRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "N={:<2} x={:<5} phi={:>3}°  states={:<4} max_rel_err={:.3e} (worst {})",
            self.n,
            self.x,
            trim_degrees(self.phi.to_degrees()),
            self.states,
            self.max_rel_err,
            self.worst_state
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let grid = VerifyGrid { n_max: 4, xs: vec![0.5, 3.0], phis: vec![0.0, 1.0] };
        let report = run_verification(&grid, DEFAULT_TOLERANCE).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.rows.len(), 4 * 2 * 2);
        assert_eq!(report.comparisons(), (2 + 4 + 8 + 16) * 4);
        let t = report.to_table();
        assert_eq!(t.rows.len(), 16);
        assert!(t.footer.iter().any(|(k, v)| k == "status" && v == "pass"));
    }

    #[test]
    fn impossible_tolerance_collects_sorted_failures() {
        let grid = VerifyGrid { n_max: 3, xs: vec![0.5, 2.0], phis: vec![0.3] };
        let report = run_verification(&grid, -1.0).unwrap();
        assert!(!report.passed());
        assert_eq!(report.failures.len(), (2 + 4 + 8) * 2);
        let keys: Vec<_> = report
            .failures
            .iter()
            .map(|f| (f.state.len(), f.state_index, f.grid_index))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
