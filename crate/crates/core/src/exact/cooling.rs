use std::cell::Cell;
use std::f64::consts::PI;

use super::coefficients::direct_coefficients;
use super::drift::{build_drift, stability, DriftSystem};
use crate::numerics::sum::sum;
use crate::numerics::{integrate, Interval, QuadOptions};
use crate::qnoise::qnoise_cooling_prediction;
use crate::{Error, Result, SystemParams};

/// Stability tolerance used before integrating.
pub const STABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// The finite window is `window_factor * kappa` beyond the outermost resonance;
    /// the rest of the line is covered by mapped tails.
    pub window_factor: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            window_factor: 10.0,
            max_panels: 50_000,
        }
    }
}

/// Steady-state phonon number of the target with its three sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingResult {
    pub n0: f64,
    /// Cavity input (laser) noise.
    pub n0_drive: f64,
    /// The target's own thermal bath.
    pub n0_local: f64,
    /// The ancilla's thermal bath.
    pub n0_ancilla: f64,
    pub stable: bool,
    pub integration_error_estimate: f64,
}

impl CoolingResult {
    fn from_parts(parts: [f64; 3], error: f64) -> Self {
        CoolingResult {
            n0: sum(parts),
            n0_drive: parts[0],
            n0_local: parts[1],
            n0_ancilla: parts[2],
            stable: true,
            integration_error_estimate: error,
        }
    }
}

/// The `n0` integrand at one frequency, including the `1/2pi` measure.
pub fn n0_integrand(drift: &DriftSystem, omega: f64) -> Result<[f64; 3]> {
    let c = direct_coefficients(drift, omega)?;
    let d = c.phonon_density(drift.correlators.nth0, drift.correlators.nth1);
    Ok(d.map(|x| x / (2.0 * PI)))
}

/// Breakpoints at every resonance centre, with a ladder of decades of its width on
/// each side so the adaptive scheme starts with panels matched to each peak.
fn breakpoints(drift: &DriftSystem, window: f64) -> Result<Vec<f64>> {
    let mut pts = vec![-window, 0.0, window];
    for s in drift.eigenvalues()? {
        let centre = -s.im;
        let width = (-s.re).max(f64::MIN_POSITIVE);
        pts.push(centre);
        let mut step = width;
        while step < window {
            pts.push(centre - step);
            pts.push(centre + step);
            step *= 10.0;
        }
    }
    pts.retain(|x| x.abs() <= window);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    Ok(pts)
}

/// Exact target occupation by frequency integration of the `b0` spectrum.
///
/// Fails with [`Error::Unstable`] when the drift matrix has an eigenvalue with
/// non-negative real part: the integral over the real axis then has no physical meaning.
pub fn exact_n0(params: &SystemParams, quad: &QuadratureSpec) -> Result<CoolingResult> {
    let p = params.checked()?;
    let drift = build_drift(&p);
    let st = stability(&drift, STABILITY_TOL)?;
    if !st.stable {
        return Err(Error::Unstable { margin: st.margin });
    }

    let eig = drift.eigenvalues()?;
    let outer = eig.iter().map(|s| s.im.abs()).fold(0.0, f64::max);
    let window = quad.window_factor * p.kappa + outer;
    let pts = breakpoints(&drift, window)?;

    let mut intervals = vec![Interval::LowerTail(-window)];
    intervals.extend(pts.windows(2).map(|w| Interval::Finite(w[0], w[1])));
    intervals.push(Interval::UpperTail(window));

    let failure = Cell::new(None);
    let f = |w: f64| match n0_integrand(&drift, w) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            [0.0; 3]
        }
    };
    let opts = QuadOptions {
        rel_tol: quad.rel_tol,
        abs_tol: 0.0,
        max_panels: quad.max_panels,
    };
    let r = integrate(f, &intervals, &opts)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(CoolingResult::from_parts(r.value, r.error))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    pub g0as: f64,
    pub exact: Result<CoolingResult>,
    /// Golden-rule prediction `n0_pred` for overlay.
    pub qnoise: Result<f64>,
}

/// `exact_n0` along a sweep of `G0` with everything else fixed. Per-point failures
/// are recorded and the sweep continues.
pub fn contribution_profile(
    params: &SystemParams,
    g0_grid: &[f64],
    quad: &QuadratureSpec,
) -> Vec<ProfilePoint> {
    g0_grid
        .iter()
        .map(|&g0| {
            let p = params.with("g0as", g0);
            ProfilePoint {
                g0as: g0,
                exact: exact_n0(&p, quad),
                qnoise: qnoise_cooling_prediction(&p).map(|c| c.n0_pred),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn decoupled_is_thermal() {
        let p = presets::fig2().with("g0as", 0.0).with("g1as", 0.0);
        let r = exact_n0(&p, &QuadratureSpec::default()).unwrap();
        assert!(rel(r.n0, p.nth0) < 1e-6, "{r:?}");
        assert_eq!(r.n0_drive, 0.0);
        assert_eq!(r.n0_ancilla, 0.0);
    }

    #[test]
    fn parts_sum_to_total() {
        let r = exact_n0(&presets::fig3(), &QuadratureSpec::default()).unwrap();
        let parts = r.n0_drive + r.n0_local + r.n0_ancilla;
        assert!(rel(parts, r.n0) < 1e-12);
        assert!(r.integration_error_estimate < 1e-6 * r.n0);
    }

    #[test]
    fn unstable_point_rejected() {
        let p = presets::fig2().with("delta", -1.0);
        assert!(matches!(
            exact_n0(&p, &QuadratureSpec::default()),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn invalid_params_rejected() {
        let p = presets::fig2().with("kappa", -1.0);
        assert!(matches!(
            exact_n0(&p, &QuadratureSpec::default()),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn window_doubling_is_negligible() {
        let p = presets::fig4a();
        let base = exact_n0(&p, &QuadratureSpec::default()).unwrap().n0;
        let wide = QuadratureSpec {
            window_factor: 20.0,
            ..QuadratureSpec::default()
        };
        let doubled = exact_n0(&p, &wide).unwrap().n0;
        assert!(rel(doubled, base) < 1e-4, "{base} {doubled}");
    }

    #[test]
    fn profile_records_failures() {
        let pts = contribution_profile(&presets::fig5(), &[1e-3, 0.3], &QuadratureSpec::default());
        assert_eq!(pts.len(), 2);
        assert!(pts[0].exact.is_ok());
        assert!(matches!(pts[1].exact, Err(Error::Unstable { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn integrand_non_negative(w in -3000.0f64..3000.0, g0 in 0.0f64..0.15, d in 0.2f64..0.6) {
            let p = presets::fig6().with("g0as", g0).with("delta", d);
            let v = n0_integrand(&build_drift(&p), w).unwrap();
            prop_assert!(v.iter().all(|x| *x >= 0.0));
        }
    }
}
