//! Exact solution of the linearised three-mode dynamics.
//!
//! The Heisenberg-Langevin equations are written as `dV/dt = M V + B u` over the basis
//! `V = (d, d†, b0, b0†, b1, b1†)` and the raw inputs
//! `u = (d_in, d_in†, b_in0, b_in0†, b_in1, b_in1†)`. The target occupation is obtained
//! two ways: by integrating the phonon spectrum of `b0` over frequency
//! ([`exact_n0`]) and by solving the steady-state covariance equation
//! ([`lyapunov_n0`]).

mod coefficients;
mod cooling;
mod drift;
mod lyapunov;

pub use coefficients::{
    appendix_coefficients, appendix_denominator, direct_coefficients, NoiseCoefficients,
};
pub use cooling::{
    contribution_profile, exact_n0, n0_integrand, CoolingResult, ProfilePoint, QuadratureSpec,
    STABILITY_TOL,
};
pub use drift::{build_drift, stability, DriftSystem, RawCorrelators, Stability};
pub use lyapunov::{lyapunov_covariance, lyapunov_n0};
