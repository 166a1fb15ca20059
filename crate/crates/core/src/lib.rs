//! Ground-state cooling of a dispersively coupled mechanical oscillator through a
//! dissipatively coupled ancilla that shares the same driven cavity mode.
//!
//! Two independent descriptions are provided:
//!
//! * [`qnoise`] evaluates the photon-number fluctuation spectrum seen by the target
//!   oscillator and turns it into golden-rule cooling predictions.
//! * [`exact`] solves the linearised Langevin equations of all three modes, either by
//!   integrating the frequency-domain phonon spectrum or by solving the steady-state
//!   covariance (Lyapunov) equation.
//!
//! All quantities are dimensionless, with frequencies measured in units of the ancilla
//! frequency `omega1` (conventionally `1.0`). Couplings enter only through the products
//! `G0 = g0 * alpha_s` and `G1 = g1 * alpha_s`, and every spectrum is returned already
//! weighted by `g0^2`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod exact;
pub mod model;
pub mod numerics;
pub mod presets;
pub mod qnoise;

mod error;

pub use error::{Error, Result};
pub use exact::{CoolingResult, DriftSystem, NoiseCoefficients, QuadratureSpec};
pub use model::{SystemParams, ValidationReport};
pub use qnoise::{EffectiveOscillator, SpectrumLabel, SpectrumTrace};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
