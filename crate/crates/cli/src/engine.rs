//! Point evaluation and parallel sweeps.

use std::time::Instant;

use hybridcool::exact::{build_drift, exact_n0, lyapunov_n0, stability, STABILITY_TOL};
use hybridcool::qnoise::{nn_spectrum_terms, qnoise_cooling_prediction};
use hybridcool::{Error, QuadratureSpec, SystemParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{GridSpec, OutputKind, SweepSpec};

/// Rows of `omega, full, bare, optical, thermal`.
pub fn spectrum_rows(p: &SystemParams, grid: &GridSpec) -> Vec<[f64; 5]> {
    grid.points()
        .into_iter()
        .map(|w| {
            let t = nn_spectrum_terms(p, w);
            [w, t.total(), t.bare, t.optical(), t.thermal]
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Done {
        n0: Option<f64>,
        n0_drive: Option<f64>,
        n0_local: Option<f64>,
        n0_ancilla: Option<f64>,
        /// Empty when not requested or when the golden rule predicts no net cooling.
        n0_qnoise: Option<f64>,
    },
    Unstable {
        margin: f64,
    },
    Failed {
        stable: Option<bool>,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub params: SystemParams,
    pub outcome: Outcome,
    pub wall_seconds: f64,
}

pub fn evaluate_point(p: &SystemParams, quad: &QuadratureSpec, spec: &SweepSpec) -> Outcome {
    let st = match stability(&build_drift(p), STABILITY_TOL) {
        Ok(st) => st,
        Err(e) => {
            return Outcome::Failed {
                stable: None,
                message: e.to_string(),
            }
        }
    };
    if !st.stable {
        return Outcome::Unstable { margin: st.margin };
    }
    let needs_exact = spec.wants(OutputKind::N0) || spec.wants(OutputKind::Contributions);
    let exact = if needs_exact {
        match exact_n0(p, quad) {
            Ok(r) => Some(r),
            Err(e) => {
                return Outcome::Failed {
                    stable: Some(true),
                    message: e.to_string(),
                }
            }
        }
    } else {
        None
    };
    let n0_qnoise = if spec.wants(OutputKind::QnoisePrediction) {
        qnoise_cooling_prediction(p).ok().map(|c| c.n0_pred)
    } else {
        None
    };
    let parts = spec.wants(OutputKind::Contributions);
    Outcome::Done {
        n0: exact.filter(|_| spec.wants(OutputKind::N0)).map(|r| r.n0),
        n0_drive: exact.filter(|_| parts).map(|r| r.n0_drive),
        n0_local: exact.filter(|_| parts).map(|r| r.n0_local),
        n0_ancilla: exact.filter(|_| parts).map(|r| r.n0_ancilla),
        n0_qnoise,
    }
}

/// Evaluates every grid point on `jobs` workers (all cores when `None`). Records come
/// back in grid order whatever the scheduling.
pub fn run_sweep(
    base: &SystemParams,
    spec: &SweepSpec,
    quad: &QuadratureSpec,
    jobs: Option<usize>,
) -> Result<Vec<SweepRecord>, rayon::ThreadPoolBuildError> {
    let points = spec.points(base);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build()?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|p| {
                let start = Instant::now();
                let outcome = evaluate_point(p, quad, spec);
                SweepRecord {
                    params: *p,
                    outcome,
                    wall_seconds: start.elapsed().as_secs_f64(),
                }
            })
            .collect()
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contributions {
    pub n0: f64,
    pub n0_drive: f64,
    pub n0_local: f64,
    pub n0_ancilla: f64,
}

/// Single-point record printed by `cool`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoolReport {
    pub verdict: &'static str,
    pub stability_margin: f64,
    pub exact: Option<Contributions>,
    pub integration_error_estimate: Option<f64>,
    pub lyapunov: Option<Contributions>,
    /// `|exact - lyapunov| / lyapunov` for the total.
    pub cross_check_deviation: Option<f64>,
    pub qnoise_prediction: Option<f64>,
    /// `|qnoise - exact| / exact`.
    pub qnoise_deviation: Option<f64>,
    pub qnoise_error: Option<String>,
}

/// Runs the exact integral, the covariance cross-check and the golden-rule estimate.
/// Instability is reported in the record; numerical failures are returned as errors.
pub fn cool(p: &SystemParams, quad: &QuadratureSpec) -> Result<CoolReport, Error> {
    let st = stability(&build_drift(p), STABILITY_TOL)?;
    if !st.stable {
        return Ok(CoolReport {
            verdict: "unstable",
            stability_margin: st.margin,
            exact: None,
            integration_error_estimate: None,
            lyapunov: None,
            cross_check_deviation: None,
            qnoise_prediction: None,
            qnoise_deviation: None,
            qnoise_error: None,
        });
    }
    let exact = exact_n0(p, quad)?;
    let lyap = lyapunov_n0(p)?;
    let as_parts = |r: &hybridcool::CoolingResult| Contributions {
        n0: r.n0,
        n0_drive: r.n0_drive,
        n0_local: r.n0_local,
        n0_ancilla: r.n0_ancilla,
    };
    let q = qnoise_cooling_prediction(p);
    let (qnoise_prediction, qnoise_error) = match &q {
        Ok(c) => (Some(c.n0_pred), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(CoolReport {
        verdict: "stable",
        stability_margin: st.margin,
        exact: Some(as_parts(&exact)),
        integration_error_estimate: Some(exact.integration_error_estimate),
        lyapunov: Some(as_parts(&lyap)),
        cross_check_deviation: Some((exact.n0 - lyap.n0).abs() / lyap.n0.abs()),
        qnoise_prediction,
        qnoise_deviation: qnoise_prediction.map(|x| (x - exact.n0).abs() / exact.n0.abs()),
        qnoise_error,
    })
}
