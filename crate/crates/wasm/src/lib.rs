//! Browser bindings: coupling, decay-rate and emission curves as flat
//! `Float64Array`s for a canvas plot.

use wasm_bindgen::prelude::*;

use chainrad::constants::ANGSTROM;
use chainrad::figures::{emission_a_grid, emission_config, emission_observation, FigureOptions};
use chainrad::sweep::linspace;
use chainrad::{damping_general, emission_sweep, transfer_electrostatic, transfer_exact, EmissionAxis, SignState};

/// `[x, J/Γ_A, static J/Γ_A]` triples on a uniform grid.
pub fn coupling_points(phi_deg: f64, x_min: f64, x_max: f64, points: usize) -> Result<Vec<f64>, String> {
    let phi = phi_deg.to_radians();
    let mut out = Vec::with_capacity(3 * points);
    for x in linspace(x_min, x_max, points).map_err(|e| e.to_string())? {
        out.push(x);
        out.push(transfer_exact(x, phi).map_err(|e| e.to_string())?);
        out.push(transfer_electrostatic(x, phi).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// `[x, Γ/Γ_A]` pairs for the state `pattern` on `n` sites.
pub fn damping_points(
    pattern: &str,
    n: usize,
    phi_deg: f64,
    x_min: f64,
    x_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let state = SignState::parse(pattern, n).map_err(|e| e.to_string())?;
    let phi = phi_deg.to_radians();
    let mut out = Vec::with_capacity(2 * points);
    for x in linspace(x_min, x_max, points).map_err(|e| e.to_string())? {
        out.push(x);
        out.push(damping_general(&state, x, phi).map_err(|e| e.to_string())?.rate_ratio);
    }
    Ok(out)
}

/// `[a (Å), I/I₀]` pairs at the reference observation point, `t = 2x/c`,
/// over the causal range of lattice constants.
pub fn emission_points(pattern: &str, n: usize, phi_deg: f64, points: usize) -> Result<Vec<f64>, String> {
    let state = SignState::parse(pattern, n).map_err(|e| e.to_string())?;
    let cfg = emission_config(phi_deg)
        .with_n_atoms(n)
        .map_err(|e| e.to_string())?;
    let (x, t) = emission_observation();
    let opts = FigureOptions { points: Some(points), ..FigureOptions::default() };
    let mut values = emission_a_grid(&opts).map_err(|e| e.to_string())?;
    // Longer chains reach the observer later; keep the grid causal.
    let reach = ((2.0 * x).powi(2) - x * x).sqrt() / (n.max(2) - 1) as f64;
    values.retain(|&a| a < reach);
    let trace = emission_sweep(&state, &cfg, x, &EmissionAxis::LatticeConst { values, t })
        .map_err(|e| e.to_string())?;
    Ok(trace.rows.iter().flat_map(|&(a, v)| [a / ANGSTROM, v]).collect())
}

#[wasm_bindgen(js_name = couplingCurve)]
pub fn coupling_curve(phi_deg: f64, x_min: f64, x_max: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    coupling_points(phi_deg, x_min, x_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = dampingCurve)]
pub fn damping_curve(
    pattern: &str,
    n: usize,
    phi_deg: f64,
    x_min: f64,
    x_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    damping_points(pattern, n, phi_deg, x_min, x_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = emissionCurve)]
pub fn emission_curve(pattern: &str, n: usize, phi_deg: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    emission_points(pattern, n, phi_deg, points).map_err(|e| JsValue::from_str(&e))
}
