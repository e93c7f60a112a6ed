//! CODATA 2018 physical constants in SI units.

use std::f64::consts::PI;

/// Planck constant, J·s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant `h/2π`, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// One ångström in meters.
pub const ANGSTROM: f64 = 1e-10;
/// One electronvolt in joules.
pub const ELECTRONVOLT: f64 = ELEMENTARY_CHARGE;
/// One e·Å in C·m.
pub const E_ANGSTROM: f64 = ELEMENTARY_CHARGE * ANGSTROM;

/// Short label recorded in CSV metadata.
pub const CODATA_LABEL: &str = "CODATA2018";

/// Constants as `key=value` pairs for output headers.
pub fn metadata() -> Vec<(String, String)> {
    vec![
        ("constants".into(), CODATA_LABEL.into()),
        ("hbar".into(), format!("{HBAR:e}")),
        ("c".into(), format!("{SPEED_OF_LIGHT:e}")),
        ("e".into(), format!("{ELEMENTARY_CHARGE:e}")),
        ("eps0".into(), format!("{EPSILON_0:e}")),
    ]
}
