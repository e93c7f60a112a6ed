//! Globally adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
//!
//! The interval is first split into `initial_panels` equal pieces, then the
//! panel with the largest error estimate is bisected until the summed error
//! estimate meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (non-negative half) and weights; the 7-point
// Gauss rule uses every odd-indexed node.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule and resource limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Required absolute accuracy.
    pub abs_tol: f64,
    /// Required accuracy relative to the magnitude of the result.
    pub rel_tol: f64,
    /// Number of equal panels before adaptive refinement starts.
    pub initial_panels: usize,
    /// Refinement gives up once this many panels exist.
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            initial_panels: 1,
            max_panels: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties broken by position for determinism.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// One application of the 15-point Kronrod rule with the embedded 7-point
/// Gauss rule, returning the Kronrod value and the QUADPACK error estimate.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, &node) in XGK.iter().take(7).enumerate() {
        let dx = half * node;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Integrates `f` over `[lo, hi]`.
///
/// Converges when the summed error estimate is at most
/// `max(abs_tol, rel_tol·|I|)`; otherwise returns [`Error::Accuracy`]
/// carrying the best estimate reached.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Domain(format!("integration bounds [{lo}, {hi}] must be finite")));
    }
    if lo == hi {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, panels: 0, evaluations: 0 });
    }
    let initial = opts.initial_panels.max(1);
    let step = (hi - lo) / initial as f64;
    let mut heap = BinaryHeap::with_capacity(initial.max(16));
    let mut evaluations = 0;
    for i in 0..initial {
        let a = lo + step * i as f64;
        let b = if i + 1 == initial { hi } else { lo + step * (i + 1) as f64 };
        let (value, error) = kronrod15(&f, a, b);
        evaluations += 15;
        heap.push(Panel { lo: a, hi: b, value, error });
    }

    loop {
        // Re-summing in a fixed order keeps the result independent of the
        // refinement history's rounding.
        let mut panels: Vec<Panel> = heap.iter().copied().collect();
        panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let tolerance = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tolerance {
            return Ok(QuadResult { value, error_estimate: error, panels: heap.len(), evaluations });
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::Accuracy {
                estimate: value,
                error_estimate: error,
                tolerance,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel cannot be split further in floating point.
            return Err(Error::Accuracy {
                estimate: value,
                error_estimate: error,
                tolerance,
                intervals: heap.len() + 1,
            });
        }
        for (a, b) in [(worst.lo, mid), (mid, worst.hi)] {
            let (value, error) = kronrod15(&f, a, b);
            evaluations += 15;
            heap.push(Panel { lo: a, hi: b, value, error });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x - 2.0 * x + 1.0, -1.0, 2.0, &QuadOptions::default()).unwrap();
        // ∫ = [x³ − x² + x] = (8 − 4 + 2) − (−1 − 1 − 1) = 9
        assert!((r.value - 9.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^{20π} sin²(x) dx = 10π
        let opts = QuadOptions { initial_panels: 10, ..QuadOptions::default() };
        let r = integrate(|x| x.sin().powi(2), 0.0, 20.0 * PI, &opts).unwrap();
        assert!((r.value - 10.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn peaked_integrand_refines() {
        // ∫_{-1}^{1} 1/(1 + 1e4 x²) dx = 2 atan(100)/100
        let exact = 2.0 * 100f64.atan() / 100.0;
        let r = integrate(|x| 1.0 / (1.0 + 1e4 * x * x), -1.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - exact).abs() < 1e-10);
        assert!(r.panels > 1);
    }

    #[test]
    fn reports_accuracy_failure() {
        let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 0.0, initial_panels: 1, max_panels: 3 };
        let err = integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, &opts).unwrap_err();
        match err {
            Error::Accuracy { estimate, .. } => assert!((estimate - 4.0 / 3.0).abs() < 1e-2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_interval() {
        let r = integrate(|x| x, 1.0, 1.0, &QuadOptions::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }
}
