//! Quantum-noise (golden-rule) description of the cooling.
//!
//! The target oscillator is cooled at a rate set by the photon-number fluctuation
//! spectrum `S_nn` at `±omega0`. The ancilla reshapes that spectrum: it is driven by the
//! cavity's input noise and by its own thermal bath, and its response feeds back into
//! the cavity amplitude quadrature.
//!
//! Spectra are returned weighted by `g0^2` (as `G0^2 * ...`), so `S[omega0] - S[-omega0]`
//! is directly the optical damping rate of the target.

use crate::model::{self, Oscillator, SystemParams};
use crate::numerics::sum::sum;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Bare photon-number spectrum `G0^2 kappa / (kappa^2/4 + (w + delta)^2)`.
pub fn bare_nn_spectrum(p: &SystemParams, omega: f64) -> f64 {
    p.g0as * p.g0as * p.kappa / (p.kappa * p.kappa / 4.0 + (omega + p.delta).powi(2))
}

/// Sideband-cooling limit of the target alone, `S0[-w0] / (S0[w0] - S0[-w0])`, in closed form.
pub fn dispersive_nopt(p: &SystemParams) -> Result<f64> {
    if p.delta >= 0.0 {
        return Err(Error::BlueDetuning { delta: p.delta });
    }
    Ok(-((p.omega0 + p.delta).powi(2) + p.kappa * p.kappa / 4.0) / (4.0 * p.omega0 * p.delta))
}

/// Optical damping of the target from the bare spectrum.
pub fn dispersive_gamma_opt(p: &SystemParams) -> f64 {
    bare_nn_spectrum(p, p.omega0) - bare_nn_spectrum(p, -p.omega0)
}

/// Steady occupation of a mode coupled to an optical bath (`n_opt`, `gamma_opt`) and a
/// thermal bath (`n_th`, `gamma`).
pub fn thermal_mix(n_opt: f64, gamma_opt: f64, n_th: f64, gamma: f64) -> Result<f64> {
    let total = gamma_opt + gamma;
    if !(total > 0.0) {
        return Err(Error::NonPositiveDamping(total));
    }
    Ok((gamma_opt * n_opt + gamma * n_th) / total)
}

/// Force spectrum acting on the ancilla through the dissipative coupling.
pub fn force_spectrum(p: &SystemParams, omega: f64) -> f64 {
    p.kappa * p.g1as * p.g1as * (omega + 2.0 * p.delta).powi(2)
        / (p.kappa * p.kappa / 4.0 + (omega + p.delta).powi(2))
}

/// Optically induced self-energy of the ancilla.
pub fn self_energy(p: &SystemParams, omega: f64) -> C64 {
    self_energy_at(p, omega.into())
}

pub(crate) fn self_energy_at(p: &SystemParams, w: C64) -> C64 {
    let a = I * p.delta + p.kappa / 2.0;
    let b = I * p.delta - p.kappa / 2.0;
    let chi = model::inv_chi_c(p, w).inv();
    let chi_mirror = model::inv_chi_c_mirror(p, w).inv();
    I * p.g1as * p.g1as * (chi * a * a - chi_mirror * b * b)
}

/// `alpha(w) = 1 - chi_c(w) (i delta + kappa/2)`; vanishes at `w = -2 delta`.
pub fn aux_alpha(p: &SystemParams, omega: f64) -> C64 {
    // Simplified to -i(w + 2 delta) chi_c(w) so the zero is exact.
    -I * (omega + 2.0 * p.delta) * model::chi_c(p, omega)
}

/// `A(w) = chi_c(w)(i delta + kappa/2) + conj(chi_c(-w))(-i delta + kappa/2)`.
pub fn aux_a(p: &SystemParams, omega: f64) -> C64 {
    let w = C64::from(omega);
    model::inv_chi_c(p, w).inv() * (I * p.delta + p.kappa / 2.0)
        + model::inv_chi_c_mirror(p, w).inv() * (-I * p.delta + p.kappa / 2.0)
}

/// Denominator of the ancilla response, `chi1^-1(w) conj(chi1^-1(-w)) + 2 omega1 Sigma[w]`.
pub fn aux_n(p: &SystemParams, omega: f64) -> C64 {
    aux_n_at(p, omega.into())
}

pub(crate) fn aux_n_at(p: &SystemParams, w: C64) -> C64 {
    model::inv_chi_osc(p, Oscillator::Ancilla, w)
        * model::inv_chi_osc_mirror(p, Oscillator::Ancilla, w)
        + 2.0 * p.omega1 * self_energy_at(p, w)
}

/// Pointwise evaluators of the auxiliary functions bound to one parameter set.
#[derive(Debug, Clone, Copy)]
pub struct AuxFunctions<'a> {
    pub params: &'a SystemParams,
}

impl<'a> AuxFunctions<'a> {
    pub fn new(params: &'a SystemParams) -> Self {
        AuxFunctions { params }
    }
    pub fn alpha(&self, omega: f64) -> C64 {
        aux_alpha(self.params, omega)
    }
    pub fn a(&self, omega: f64) -> C64 {
        aux_a(self.params, omega)
    }
    pub fn n(&self, omega: f64) -> C64 {
        aux_n(self.params, omega)
    }
    pub fn sigma(&self, omega: f64) -> C64 {
        self_energy(self.params, omega)
    }
    /// `omega1 / (omega0 + omega1_eff)`; slightly above 1/2 near resonance.
    pub fn beta(&self, eff: &EffectiveOscillator) -> f64 {
        self.params.omega1 / (self.params.omega0 + eff.omega1_eff)
    }
}

/// The optically dressed ancilla.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveOscillator {
    pub omega1_eff: f64,
    pub gamma1_eff: f64,
    pub n1_eff: f64,
}

impl EffectiveOscillator {
    pub fn susceptibility(&self, omega: f64) -> C64 {
        (self.gamma1_eff / 2.0 - I * (omega - self.omega1_eff)).inv()
    }

    /// Position spectrum of the dressed ancilla.
    pub fn position_spectrum(&self, omega: f64) -> f64 {
        let plus = self.susceptibility(omega).norm_sqr();
        let minus = self.susceptibility(-omega).norm_sqr();
        self.gamma1_eff * (plus * (self.n1_eff + 1.0) + minus * self.n1_eff)
    }
}

/// Frequency, width and occupation of the ancilla under dissipative cooling.
pub fn effective_ancilla(p: &SystemParams) -> Result<EffectiveOscillator> {
    let sigma = self_energy(p, p.omega1);
    let softened = p.omega1 * p.omega1 + 2.0 * p.omega1 * sigma.re;
    if !(softened > 0.0) {
        return Err(Error::AncillaSoftened { value: softened });
    }
    let omega1_eff = softened.sqrt();
    let gamma1_eff = p.gamma1 - 2.0 * sigma.im;

    let n1_eff = if p.g1as == 0.0 {
        p.nth1
    } else {
        let plus = force_spectrum(p, p.omega1);
        let minus = force_spectrum(p, -p.omega1);
        if !(plus > minus) {
            return Err(Error::DissipativeHeating { plus, minus });
        }
        let gamma_opt = plus - minus;
        thermal_mix(minus / gamma_opt, gamma_opt, p.nth1, p.gamma1)?
    };
    Ok(EffectiveOscillator {
        omega1_eff,
        gamma1_eff,
        n1_eff,
    })
}

/// Position spectrum of the ancilla, `S1_xx`.
pub fn xx1_spectrum(eff: &EffectiveOscillator, omega: f64) -> f64 {
    eff.position_spectrum(omega)
}

/// Correlations `(S_cx, S_xc)` between the ancilla position and the cavity quadrature.
pub fn interference_spectra(p: &SystemParams, omega: f64) -> (C64, C64) {
    let pref = 2.0 * p.omega1 * p.g1as * p.kappa.sqrt();
    let chi = model::chi_c(p, omega);
    let alpha = aux_alpha(p, omega);
    let s_cx = -I * pref * chi * alpha.conj() / aux_n(p, -omega);
    let s_xc = I * pref * chi.conj() * alpha / aux_n(p, omega);
    (s_cx, s_xc)
}

/// Weak-coupling assembly of `g0^2 S_nn` from the dressed-ancilla position spectrum and
/// the interference terms.
///
/// This is the perturbative picture; it underestimates the peak heights when the
/// target sits within a few ancilla widths of `omega1_eff`. [`full_nn_spectrum`] is the
/// exact form.
pub fn perturbative_nn_spectrum(p: &SystemParams, eff: &EffectiveOscillator, omega: f64) -> f64 {
    let bare = bare_nn_spectrum(p, omega);
    if p.g1as == 0.0 {
        return bare;
    }
    let g0sq = p.g0as * p.g0as;
    let a = aux_a(p, omega);
    let position = g0sq * p.g1as * p.g1as * a.norm_sqr() * eff.position_spectrum(omega);
    let (_, s_xc) = interference_spectra(p, omega);
    let interference = g0sq * p.g1as * p.kappa.sqrt() * 2.0 * (a * s_xc).re;
    sum([bare, position, interference])
}

/// Terms of the exact `g0^2 S_nn[w]` (target decoupled, ancilla treated exactly).
///
/// The cavity quadrature is driven by the input noise through
/// `-sqrt(kappa) (chi_c + delta_anc)` with `delta_anc = 2i omega1 G1^2 alpha A / N`,
/// and by the ancilla bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NnSpectrumTerms {
    /// `G0^2 kappa |chi_c|^2`.
    pub bare: f64,
    /// Cross term between the cavity-filtered and the ancilla-mediated drive noise.
    pub interference: f64,
    /// Drive noise that reaches the cavity quadrature through the ancilla only.
    pub ancilla_optical: f64,
    /// Thermal noise of the ancilla bath.
    pub thermal: f64,
}

impl NnSpectrumTerms {
    pub fn optical(&self) -> f64 {
        sum([self.bare, self.interference, self.ancilla_optical])
    }

    pub fn total(&self) -> f64 {
        sum([
            self.bare,
            self.interference,
            self.ancilla_optical,
            self.thermal,
        ])
    }
}

pub fn nn_spectrum_terms(p: &SystemParams, omega: f64) -> NnSpectrumTerms {
    let bare = bare_nn_spectrum(p, omega);
    if p.g1as == 0.0 {
        return NnSpectrumTerms {
            bare,
            interference: 0.0,
            ancilla_optical: 0.0,
            thermal: 0.0,
        };
    }
    let w = C64::from(omega);
    let g0sq = p.g0as * p.g0as;
    let g1sq = p.g1as * p.g1as;
    let a_over_n = aux_a(p, omega) / aux_n(p, omega);
    let chi = model::chi_c(p, omega);
    let anc = 2.0 * I * p.omega1 * g1sq * aux_alpha(p, omega) * a_over_n;

    let interference = g0sq * p.kappa * 2.0 * (chi.conj() * anc).re;
    let ancilla_optical = g0sq * p.kappa * anc.norm_sqr();

    // b_in,1 enters with conj(chi1^-1(-w)), b_in,1^dagger with chi1^-1(w).
    let down = model::inv_chi_osc_mirror(p, Oscillator::Ancilla, w).norm_sqr();
    let up = model::inv_chi_osc(p, Oscillator::Ancilla, w).norm_sqr();
    let thermal =
        g0sq * g1sq * p.gamma1 * a_over_n.norm_sqr() * (down * (p.nth1 + 1.0) + up * p.nth1);

    NnSpectrumTerms {
        bare,
        interference,
        ancilla_optical,
        thermal,
    }
}

/// Exact `g0^2 S_nn[w]` with the ancilla's back-action included to all orders.
pub fn full_nn_spectrum(p: &SystemParams, omega: f64) -> f64 {
    nn_spectrum_terms(p, omega).total()
}

/// `(optical, thermal)` split of [`full_nn_spectrum`].
pub fn source_decomposition(p: &SystemParams, omega: f64) -> (f64, f64) {
    let t = nn_spectrum_terms(p, omega);
    (t.optical(), t.thermal)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingPrediction {
    pub n_opt0: f64,
    pub gamma_opt0: f64,
    pub n0_pred: f64,
}

/// Golden-rule cooling limit of the target from the full spectrum.
pub fn qnoise_cooling_prediction(p: &SystemParams) -> Result<CoolingPrediction> {
    let plus = full_nn_spectrum(p, p.omega0);
    let minus = full_nn_spectrum(p, -p.omega0);
    if !(plus > minus) {
        return Err(Error::NoNetCooling { plus, minus });
    }
    let gamma_opt0 = plus - minus;
    let n_opt0 = minus / gamma_opt0;
    Ok(CoolingPrediction {
        n_opt0,
        gamma_opt0,
        n0_pred: thermal_mix(n_opt0, gamma_opt0, p.nth0, p.gamma0)?,
    })
}

/// Ratio of the ancilla-mediated optical contribution to the ancilla-thermal
/// contribution in the unresolved-sideband limit.
pub fn quality_ratio_diagnostic(p: &SystemParams, omega: f64) -> Result<f64> {
    if p.nth1 == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let w = C64::from(omega);
    let q = (p.omega1 / p.gamma1) / (p.kappa / p.omega1);
    let up = model::inv_chi_osc(p, Oscillator::Ancilla, w).norm_sqr();
    let down = model::inv_chi_osc(p, Oscillator::Ancilla, -w).norm_sqr();
    Ok(q * 16.0 * p.g1as * p.g1as * (omega + 2.0 * p.delta).powi(2) / (p.nth1 * (up + down)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumLabel {
    BareNn,
    FullNn,
    Force,
    Xx1,
    Cx,
    Xc,
    SourceOptical,
    SourceThermal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceValues {
    Real(Vec<f64>),
    Complex(Vec<C64>),
}

/// A spectrum sampled on a strictly increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub grid: Vec<f64>,
    pub values: TraceValues,
    pub label: SpectrumLabel,
}

impl SpectrumTrace {
    pub fn sample(p: &SystemParams, grid: Vec<f64>, label: SpectrumLabel) -> Result<Self> {
        let p = p.checked()?;
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParams(vec![
                "grid must be strictly increasing".into(),
            ]));
        }
        let values = match label {
            SpectrumLabel::Cx | SpectrumLabel::Xc => TraceValues::Complex(
                grid.iter()
                    .map(|&w| {
                        let (cx, xc) = interference_spectra(&p, w);
                        if label == SpectrumLabel::Cx {
                            cx
                        } else {
                            xc
                        }
                    })
                    .collect(),
            ),
            SpectrumLabel::Xx1 => {
                let eff = effective_ancilla(&p)?;
                TraceValues::Real(grid.iter().map(|&w| eff.position_spectrum(w)).collect())
            }
            _ => TraceValues::Real(
                grid.iter()
                    .map(|&w| match label {
                        SpectrumLabel::BareNn => bare_nn_spectrum(&p, w),
                        SpectrumLabel::FullNn => full_nn_spectrum(&p, w),
                        SpectrumLabel::Force => force_spectrum(&p, w),
                        SpectrumLabel::SourceOptical => source_decomposition(&p, w).0,
                        SpectrumLabel::SourceThermal => source_decomposition(&p, w).1,
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
        };
        let finite = match &values {
            TraceValues::Real(v) => v.iter().all(|x| x.is_finite()),
            TraceValues::Complex(v) => v.iter().all(|z| z.is_finite()),
        };
        if !finite {
            return Err(Error::InvalidParams(vec![
                "spectrum is not finite on the grid".into(),
            ]));
        }
        Ok(SpectrumTrace {
            grid,
            values,
            label,
        })
    }
}
