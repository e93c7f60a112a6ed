//! Collective decay rates of single-excitation sign states.
//!
//! Rates are reported as `Γ/Γ_A`. The closed forms sum the bond kernel
//! `F(q_A·a·k)` over bond lengths `k`; the quadrature oracle integrates the
//! golden-rule angular integrand
//!
//! ```text
//! Γ/Γ_A = 3/(8xN) ∫_{-x}^{x} |Σ_n C_n e^{-iny}|² [(1 + cos²φ) − (y/x)²(3cos²φ − 1)] dy
//! ```
//!
//! directly, without expanding `|Σ|²` into bonds.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::states::SignState;
use crate::sweep::{phi_label, trim_degrees, SweepTable};

/// Below this argument the kernel is evaluated from its Taylor series.
pub const KERNEL_SERIES_THRESHOLD: f64 = 1.0;

/// How a [`DampingResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DampingResult {
    /// `Γ/Γ_A`.
    pub rate_ratio: f64,
    pub method: Method,
    pub state: SignState,
    /// Dimensionless lattice constant `q_A·a`.
    pub x: f64,
    /// Polarization angle in radians.
    pub phi: f64,
}

fn check_lattice(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "decay rates need a positive finite lattice constant, got q_A·a = {x}"
        )))
    }
}

/// `sin x / x` and `(x cos x − sin x)/x³` from their Taylor series.
pub(crate) fn kernel_parts_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    // sinc = Σ (−1)^k x^{2k}/(2k+1)!
    // g    = Σ_{k≥1} (−1)^k 2k x^{2k−2}/(2k+1)!
    let mut sinc = 1.0;
    let mut g = 0.0;
    let mut t = 1.0; // x^{2k}/(2k+1)!
    let mut u = 1.0 / 6.0; // x^{2k−2}/(2k+1)!
    let mut sign = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        let denom = (2.0 * kf) * (2.0 * kf + 1.0);
        t *= x2 / denom;
        if k > 1 {
            u *= x2 / denom;
        }
        sign = -sign;
        sinc += sign * t;
        let g_term = sign * 2.0 * kf * u;
        g += g_term;
        if t < 1e-18 * sinc.abs() && g_term.abs() < 1e-18 * g.abs() {
            break;
        }
    }
    (sinc, g)
}

pub(crate) fn kernel_parts_direct(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (s / x, c / (x * x) - s / (x * x * x))
}

/// Bond kernel
/// `F(x) = (3/2){ (sin x/x)(1 − cos²φ) + [cos x/x² − sin x/x³](1 − 3cos²φ) }`.
///
/// Even in `x`; `F(0) = 1` for every polarization.
pub fn f_kernel(x: f64, phi: f64) -> f64 {
    let x = x.abs();
    let (sinc, g) = if x < KERNEL_SERIES_THRESHOLD {
        kernel_parts_series(x)
    } else {
        kernel_parts_direct(x)
    };
    let c2 = phi.cos().powi(2);
    1.5 * (sinc * (1.0 - c2) + g * (1.0 - 3.0 * c2))
}

/// Decay rate of the fully symmetric state,
/// `1 + 2 Σ_{k=1}^{N−1} ((N − k)/N) F(k x)`.
pub fn damping_symmetric(n: usize, x: f64, phi: f64) -> Result<DampingResult> {
    let state = SignState::symmetric(n)?;
    check_lattice(x)?;
    let nf = n as f64;
    let bonds: f64 = (1..n)
        .map(|k| (nf - k as f64) / nf * f_kernel(k as f64 * x, phi))
        .sum();
    Ok(DampingResult {
        rate_ratio: 1.0 + 2.0 * bonds,
        method: Method::ClosedForm,
        state,
        x,
        phi,
    })
}

/// Decay rate of an arbitrary sign state,
/// `1 + (2/N) Σ_{n<m} C_n C_m F(x (m − n))`.
///
/// Pairs are grouped by bond length, so the sum runs over the integer
/// autocorrelation of the coefficients.
pub fn damping_general(state: &SignState, x: f64, phi: f64) -> Result<DampingResult> {
    check_lattice(x)?;
    let n = state.len();
    let bonds: f64 = (1..n)
        .filter_map(|k| match state.autocorrelation(k) {
            0 => None,
            a => Some(a as f64 * f_kernel(k as f64 * x, phi)),
        })
        .sum();
    Ok(DampingResult {
        rate_ratio: 1.0 + 2.0 / n as f64 * bonds,
        method: Method::ClosedForm,
        state: state.clone(),
        x,
        phi,
    })
}

/// The normalized golden-rule integrand at `y ∈ [−x, x]`.
pub fn golden_rule_integrand(coeffs: &[i8], x: f64, phi: f64, y: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (n, &c) in coeffs.iter().enumerate() {
        let (s, co) = ((n + 1) as f64 * y).sin_cos();
        re += f64::from(c) * co;
        im -= f64::from(c) * s;
    }
    let c2 = phi.cos().powi(2);
    let r = y / x;
    let angular = (1.0 + c2) - r * r * (3.0 * c2 - 1.0);
    3.0 / (8.0 * x * coeffs.len() as f64) * (re * re + im * im) * angular
}

/// Default oracle settings: absolute tolerance 1e-10 on `Γ/Γ_A`.
pub fn oracle_options(state: &SignState, x: f64) -> QuadOptions {
    // |Σ|² carries frequencies up to N − 1; two panels per period.
    let top = state.len().saturating_sub(1).max(1) as f64;
    let panels = 1 + (2.0 * x * top / std::f64::consts::PI).ceil() as usize;
    QuadOptions {
        initial_panels: panels,
        ..QuadOptions::default()
    }
}

/// Decay rate by direct numerical integration of the golden-rule integral.
pub fn damping_quadrature_oracle(state: &SignState, x: f64, phi: f64) -> Result<DampingResult> {
    damping_quadrature_with(state, x, phi, &oracle_options(state, x))
}

pub fn damping_quadrature_with(
    state: &SignState,
    x: f64,
    phi: f64,
    opts: &QuadOptions,
) -> Result<DampingResult> {
    check_lattice(x)?;
    let coeffs = state.coeffs();
    let r = integrate(|y| golden_rule_integrand(coeffs, x, phi, y), -x, x, opts)?;
    Ok(DampingResult {
        rate_ratio: r.value,
        method: Method::Quadrature,
        state: state.clone(),
        x,
        phi,
    })
}

/// `F(x)` on a grid for each polarization. Columns `x, F_phi<deg>...`.
pub fn f_kernel_sweep(xs: &[f64], phis: &[f64]) -> SweepTable {
    let mut columns = vec!["x".to_string()];
    columns.extend(phis.iter().map(|&p| format!("F_{}", phi_label(p))));
    let mut table = SweepTable::new(columns).with_metadata("quantity", "F");
    for &x in xs {
        let mut row = vec![x];
        row.extend(phis.iter().map(|&p| f_kernel(x, p)));
        table.push_row(row);
    }
    table
}

/// Symmetric-state rate versus chain length, `N = 1..=n_max`.
/// Columns `N, gamma_phi<deg>...`.
pub fn n_scaling_sweep(n_max: usize, x: f64, phis: &[f64]) -> Result<SweepTable> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    check_lattice(x)?;
    let mut columns = vec!["N".to_string()];
    columns.extend(phis.iter().map(|&p| format!("gamma_{}", phi_label(p))));
    let mut table = SweepTable::new(columns)
        .with_metadata("state", "sym")
        .with_metadata("x", format!("{x:e}"));
    for n in 1..=n_max {
        let mut row = vec![n as f64];
        for &p in phis {
            row.push(damping_symmetric(n, x, p)?.rate_ratio);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Symmetric-state rate versus polarization angle (radians in, degrees
/// out). Columns `phi_deg, gamma`.
pub fn angle_sweep(n: usize, x: f64, phi_grid: &[f64]) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["phi_deg".into(), "gamma".into()])
        .with_metadata("state", "sym")
        .with_metadata("N", n.to_string())
        .with_metadata("x", format!("{x:e}"));
    for &p in phi_grid {
        table.push_row(vec![p.to_degrees(), damping_symmetric(n, x, p)?.rate_ratio]);
    }
    Ok(table)
}

/// Rate of `state` versus `q_A·a`. Columns `x, gamma_phi<deg>...`; with
/// `oracle` set, `gamma_quadrature_phi<deg>...` columns follow and a
/// `max_rel_err` footer records the largest closed-form/quadrature gap.
pub fn x_sweep(state: &SignState, xs: &[f64], phis: &[f64], oracle: bool) -> Result<SweepTable> {
    let mut columns = vec!["x".to_string()];
    columns.extend(phis.iter().map(|&p| format!("gamma_{}", phi_label(p))));
    if oracle {
        columns.extend(phis.iter().map(|&p| format!("gamma_quadrature_{}", phi_label(p))));
    }
    let mut table = SweepTable::new(columns)
        .with_metadata("state", state.to_string())
        .with_metadata("N", state.len().to_string());
    let mut max_rel = 0.0f64;
    for &x in xs {
        let mut row = vec![x];
        let closed = phis
            .iter()
            .map(|&p| damping_general(state, x, p).map(|r| r.rate_ratio))
            .collect::<Result<Vec<_>>>()?;
        row.extend_from_slice(&closed);
        if oracle {
            for (&p, &c) in phis.iter().zip(&closed) {
                let q = damping_quadrature_oracle(state, x, p)?.rate_ratio;
                max_rel = max_rel.max(relative_gap(c, q));
                row.push(q);
            }
        }
        table.push_row(row);
    }
    if oracle {
        table.footer.push(("max_rel_err".into(), format!("{max_rel:e}")));
    }
    Ok(table)
}

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Degree label used in metadata.
pub fn degrees_label(phi: f64) -> String {
    trim_degrees(phi.to_degrees())
}
