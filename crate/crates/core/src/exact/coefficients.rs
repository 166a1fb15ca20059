use nalgebra::{Matrix6, Vector6};

use super::drift::DriftSystem;
use crate::model::{inv_chi_c, inv_chi_c_mirror, inv_chi_osc, inv_chi_osc_mirror, Oscillator};
use crate::qnoise::aux_n_at;
use crate::{Error, Result, SystemParams, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Response of `b0` at one frequency to each raw input:
/// `b0 = a_d d_in + b_d d_in† + a0 b_in0 + b0 b_in0† + a1 b_in1 + b1 b_in1†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseCoefficients {
    pub a_d: C64,
    pub b_d: C64,
    pub a0: C64,
    pub b0: C64,
    pub a1: C64,
    pub b1: C64,
}

impl NoiseCoefficients {
    pub fn as_array(&self) -> [C64; 6] {
        [self.a_d, self.b_d, self.a0, self.b0, self.a1, self.b1]
    }

    fn from_array(c: [C64; 6]) -> Self {
        NoiseCoefficients {
            a_d: c[0],
            b_d: c[1],
            a0: c[2],
            b0: c[3],
            a1: c[4],
            b1: c[5],
        }
    }

    /// Phonon spectral density split into (drive, local bath, ancilla bath), without
    /// the `1/2pi` measure.
    pub fn phonon_density(&self, nth0: f64, nth1: f64) -> [f64; 3] {
        [
            self.b_d.norm_sqr(),
            (nth0 + 1.0) * self.b0.norm_sqr() + nth0 * self.a0.norm_sqr(),
            (nth1 + 1.0) * self.b1.norm_sqr() + nth1 * self.a1.norm_sqr(),
        ]
    }
}

/// Coefficients from the linear solve `(-i w I - M) V = B u`, keeping the `b0` row.
pub fn direct_coefficients(drift: &DriftSystem, omega: f64) -> Result<NoiseCoefficients> {
    let k = Matrix6::from_diagonal_element(-I * omega) - drift.m;
    // Row 2 of K^-1 is the solution of K^T y = e_2.
    let lu = k.transpose().lu();
    let y = lu
        .solve(&Vector6::from_fn(|i, _| {
            C64::from(if i == 2 { 1.0 } else { 0.0 })
        }))
        .ok_or_else(|| Error::Singular(format!("-i w I - M at w = {omega}")))?;
    let row = y.transpose() * drift.noise_map;
    if row.iter().any(|z| !z.is_finite()) {
        return Err(Error::AtPole { omega });
    }
    Ok(NoiseCoefficients::from_array(std::array::from_fn(|j| {
        row[j]
    })))
}

/// Determinant-like denominator of the closed-form coefficients, continued to complex
/// frequency. Its zeros are the eigenfrequencies `w = i s` of the drift matrix.
pub fn appendix_denominator(p: &SystemParams, w: C64) -> C64 {
    let cav = inv_chi_c(p, w) * inv_chi_c_mirror(p, w);
    let tgt = inv_chi_osc(p, Oscillator::Target, w) * inv_chi_osc_mirror(p, Oscillator::Target, w);
    let anc =
        inv_chi_osc(p, Oscillator::Ancilla, w) * inv_chi_osc_mirror(p, Oscillator::Ancilla, w);
    let g0sq = p.g0as * p.g0as;
    let g1sq = p.g1as * p.g1as;
    cav * tgt * aux_n_at(p, w) - 4.0 * p.omega0 * p.omega1 * p.kappa * p.kappa * g0sq * g1sq
        + 4.0 * p.delta * p.omega0 * g0sq * anc
}

/// Closed-form coefficients of `b0` in terms of the susceptibilities.
pub fn appendix_coefficients(p: &SystemParams, omega: f64) -> Result<NoiseCoefficients> {
    let w = C64::from(omega);
    let (d, k) = (p.delta, p.kappa);
    let (g0, g1) = (p.g0as, p.g1as);
    let g0sq = g0 * g0;
    let g1sq = g1 * g1;

    let den = appendix_denominator(p, w);
    if !(den.norm() > f64::MIN_POSITIVE) {
        return Err(Error::AtPole { omega });
    }
    let cav = inv_chi_c(p, w);
    let cav_m = inv_chi_c_mirror(p, w);
    let tgt_m = inv_chi_osc_mirror(p, Oscillator::Target, w);
    let anc = inv_chi_osc(p, Oscillator::Ancilla, w);
    let anc_m = inv_chi_osc_mirror(p, Oscillator::Ancilla, w);
    let k11 = anc * anc_m;
    let n = aux_n_at(p, w);

    let drive = -I * g0 * k.sqrt() * tgt_m / den;
    let a_d =
        drive * (cav_m * k11 + 2.0 * I * p.omega1 * g1sq * (-2.0 * d * d - I * k * (omega - d)));
    let b_d = drive * (cav * k11 + 2.0 * I * p.omega1 * g1sq * (2.0 * d * d + I * k * (omega + d)));

    let sg0 = p.gamma0.sqrt();
    let a0 = -sg0 / den
        * (2.0 * I * g0sq * (k * k * p.omega1 * g1sq - d * k11) + cav * cav_m * tgt_m * n);
    let b0 = 2.0 * I * sg0 * g0sq / den * (d * k11 - p.omega1 * k * k * g1sq);

    let f = g0 * g1 * tgt_m * p.gamma1.sqrt() * (I * k * k + 2.0 * k * omega - 4.0 * I * d * d)
        / (2.0 * den);
    Ok(NoiseCoefficients {
        a_d,
        b_d,
        a0,
        b0,
        a1: f * anc_m,
        b1: f * anc,
    })
}
