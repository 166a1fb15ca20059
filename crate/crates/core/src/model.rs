//! Physical parameters and the bare susceptibilities shared by every other module.
//!
//! Frequency arguments may be complex. For a real frequency `w` the "mirror" inverse
//! susceptibility `conj(chi^-1(-w))` equals `width/2 - i(w + shift)`; the crate uses
//! that analytic form everywhere so the same expressions continue into the complex
//! plane (needed to locate the poles of the exact solution).

use std::fmt;

use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

/// Every physical constant of the hybrid system, in units of `omega1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Resonant frequency of the target (dispersively coupled) oscillator.
    pub omega0: f64,
    /// Resonant frequency of the ancilla (dissipatively coupled) oscillator.
    pub omega1: f64,
    /// Cavity line width.
    pub kappa: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    /// Effective dispersive coupling `g0 * alpha_s`.
    pub g0as: f64,
    /// Effective dissipative coupling `g1 * alpha_s`.
    pub g1as: f64,
    /// Laser detuning `omega_drive - omega_cavity`.
    pub delta: f64,
    pub nth0: f64,
    pub nth1: f64,
}

impl SystemParams {
    /// Names accepted by [`SystemParams::get`] and [`SystemParams::set`], in CSV column order.
    pub const FIELDS: [&'static str; 10] = [
        "omega0", "omega1", "kappa", "gamma0", "gamma1", "g0as", "g1as", "delta", "nth0", "nth1",
    ];

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "omega0" => self.omega0,
            "omega1" => self.omega1,
            "kappa" => self.kappa,
            "gamma0" => self.gamma0,
            "gamma1" => self.gamma1,
            "g0as" => self.g0as,
            "g1as" => self.g1as,
            "delta" => self.delta,
            "nth0" => self.nth0,
            "nth1" => self.nth1,
            _ => return None,
        })
    }

    /// Sets a field by name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "omega0" => &mut self.omega0,
            "omega1" => &mut self.omega1,
            "kappa" => &mut self.kappa,
            "gamma0" => &mut self.gamma0,
            "gamma1" => &mut self.gamma1,
            "g0as" => &mut self.g0as,
            "g1as" => &mut self.g1as,
            "delta" => &mut self.delta,
            "nth0" => &mut self.nth0,
            "nth1" => &mut self.nth1,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        assert!(self.set(name, value), "unknown parameter {name}");
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for name in Self::FIELDS {
            let v = self.get(name).unwrap();
            if !v.is_finite() {
                violations.push(format!("{name} must be finite"));
            }
        }
        let positive = [
            ("omega0", self.omega0),
            ("omega1", self.omega1),
            ("kappa", self.kappa),
            ("gamma0", self.gamma0),
            ("gamma1", self.gamma1),
        ];
        for (name, v) in positive {
            if v.is_finite() && v <= 0.0 {
                violations.push(format!("{name} must be positive"));
            }
        }
        let non_negative = [
            ("g0as", self.g0as),
            ("g1as", self.g1as),
            ("nth0", self.nth0),
            ("nth1", self.nth1),
        ];
        for (name, v) in non_negative {
            if v.is_finite() && v < 0.0 {
                violations.push(format!("{name} must be non-negative"));
            }
        }
        ValidationReport {
            violations,
            unresolved_sideband: self.kappa > self.omega0 && self.kappa > self.omega1,
        }
    }

    /// Validates and converts the report into an error when anything is violated.
    pub fn checked(self) -> crate::Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(crate::Error::InvalidParams(report.violations))
        }
    }

    fn mode(&self, k: Oscillator) -> (f64, f64) {
        match k {
            Oscillator::Target => (self.omega0, self.gamma0),
            Oscillator::Ancilla => (self.omega1, self.gamma1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    /// Informational: `kappa` exceeds both mechanical frequencies.
    pub unresolved_sideband: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")?;
        } else {
            write!(f, "invalid: {}", self.violations.join("; "))?;
        }
        let regime = if self.unresolved_sideband {
            "unresolved"
        } else {
            "resolved"
        };
        write!(f, " ({regime} sideband)")
    }
}

/// The two mechanical modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oscillator {
    /// Oscillator 0, dispersively coupled.
    Target,
    /// Oscillator 1, dissipatively coupled.
    Ancilla,
}

impl TryFrom<u8> for Oscillator {
    type Error = u8;

    fn try_from(k: u8) -> Result<Self, u8> {
        match k {
            0 => Ok(Oscillator::Target),
            1 => Ok(Oscillator::Ancilla),
            other => Err(other),
        }
    }
}

/// Tag for [`Susceptibility`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SusceptibilityKind {
    Cavity,
    Osc0,
    Osc1,
    /// Optically dressed ancilla with the given frequency and width.
    Osc1Effective {
        omega: f64,
        gamma: f64,
    },
}

/// A Lorentzian response `1 / (width/2 - i(w - centre))` bound to a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibility {
    pub kind: SusceptibilityKind,
    half_width: f64,
    centre: f64,
}

impl Susceptibility {
    pub fn new(params: &SystemParams, kind: SusceptibilityKind) -> Self {
        let (half_width, centre) = match kind {
            // chi_c^-1 = kappa/2 - i(w + delta): centred at -delta
            SusceptibilityKind::Cavity => (params.kappa / 2.0, -params.delta),
            SusceptibilityKind::Osc0 => (params.gamma0 / 2.0, params.omega0),
            SusceptibilityKind::Osc1 => (params.gamma1 / 2.0, params.omega1),
            SusceptibilityKind::Osc1Effective { omega, gamma } => (gamma / 2.0, omega),
        };
        Susceptibility {
            kind,
            half_width,
            centre,
        }
    }

    pub fn inverse(&self, w: C64) -> C64 {
        self.half_width - I * (w - self.centre)
    }

    /// `conj(chi^-1(-w))` continued analytically off the real axis.
    pub fn inverse_mirror(&self, w: C64) -> C64 {
        self.half_width - I * (w + self.centre)
    }

    pub fn eval(&self, w: f64) -> C64 {
        self.inverse(C64::from(w)).inv()
    }

    /// `|chi(w)|^2` in closed Lorentzian form.
    pub fn lorentzian(&self, w: f64) -> f64 {
        1.0 / (self.half_width * self.half_width + (w - self.centre).powi(2))
    }
}

/// Cavity susceptibility `1 / (kappa/2 - i(w + delta))`.
pub fn chi_c(params: &SystemParams, omega: f64) -> C64 {
    inv_chi_c(params, omega.into()).inv()
}

/// Mechanical susceptibility `1 / (gamma_k/2 - i(w - omega_k))`.
pub fn chi_osc(params: &SystemParams, k: Oscillator, omega: f64) -> C64 {
    inv_chi_osc(params, k, omega.into()).inv()
}

pub(crate) fn inv_chi_c(p: &SystemParams, w: C64) -> C64 {
    p.kappa / 2.0 - I * (w + p.delta)
}

pub(crate) fn inv_chi_c_mirror(p: &SystemParams, w: C64) -> C64 {
    p.kappa / 2.0 - I * (w - p.delta)
}

pub(crate) fn inv_chi_osc(p: &SystemParams, k: Oscillator, w: C64) -> C64 {
    let (wk, gk) = p.mode(k);
    gk / 2.0 - I * (w - wk)
}

pub(crate) fn inv_chi_osc_mirror(p: &SystemParams, k: Oscillator, w: C64) -> C64 {
    let (wk, gk) = p.mode(k);
    gk / 2.0 - I * (w + wk)
}
