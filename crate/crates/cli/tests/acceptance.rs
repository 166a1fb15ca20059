//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use hybridcool::exact::{
    appendix_coefficients, build_drift, contribution_profile, direct_coefficients, exact_n0,
    lyapunov_n0, n0_integrand, stability, QuadratureSpec, STABILITY_TOL,
};
use hybridcool::qnoise::{
    bare_nn_spectrum, dispersive_nopt, effective_ancilla, force_spectrum, full_nn_spectrum,
    qnoise_cooling_prediction,
};
use hybridcool::{presets, SystemParams};
use hybridcool_cli::config::{AxisSpec, OutputKind, SweepSpec};
use hybridcool_cli::engine::run_sweep;
use hybridcool_cli::output::sweep_csv;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn within(name: &str, value: f64, target: f64, tol: f64) -> Result<String, String> {
    let msg = format!("{name} = {value:.6} (target {target} ±{:.0}%)", tol * 100.0);
    if rel(value, target) <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn all(parts: Vec<Check>) -> Check {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for p in parts {
        match p {
            Ok(s) => ok.push(s),
            Err(s) => bad.push(s),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(format!(
            "failed: {}; passed: {}",
            bad.join("; "),
            ok.join("; ")
        ))
    }
}

fn effective_frequency() -> Check {
    let range = |name: &str, p: &SystemParams, lo: f64, hi: f64| {
        let w = effective_ancilla(p).map_err(|e| e.to_string())?.omega1_eff;
        let msg = format!("{name} omega1_eff = {w:.5} in [{lo}, {hi}]");
        if (lo..=hi).contains(&w) {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    all(vec![
        range("fig2", &presets::fig2(), 0.673, 0.683),
        range("fig3", &presets::fig3(), 0.763, 0.773),
    ])
}

fn spectrum_values() -> Check {
    let f3 = presets::fig3();
    let f2 = presets::fig2();
    let nopt = |p: &SystemParams| {
        qnoise_cooling_prediction(p)
            .map(|c| c.n_opt0)
            .unwrap_or(f64::NAN)
    };
    all(vec![
        within("fig3 S[0.76]", full_nn_spectrum(&f3, 0.76), 0.2814, 0.05),
        within("fig3 S[-0.76]", full_nn_spectrum(&f3, -0.76), 0.0076, 0.10),
        within("fig3 n_opt0", nopt(&f3), 0.0277, 0.15),
        within("fig2 S[0.7]", full_nn_spectrum(&f2, 0.7), 0.051, 0.10),
        within("fig2 S[-0.7]", full_nn_spectrum(&f2, -0.7), 0.0021, 0.10),
        within("fig2 n_opt0", nopt(&f2), 0.042, 0.15),
    ])
}

fn sideband_baselines() -> Check {
    let w = effective_ancilla(&presets::fig2())
        .map_err(|e| e.to_string())?
        .omega1_eff;
    let a = presets::fig2().with("omega0", w).with("delta", -150.0);
    let b = presets::fig2()
        .with("kappa", 7000.0)
        .with("omega0", 0.7)
        .with("delta", -3500.0);
    let na = dispersive_nopt(&a).map_err(|e| e.to_string())?;
    let nb = dispersive_nopt(&b).map_err(|e| e.to_string())?;
    let check = |name: &str, v: f64, t: f64, tol: f64| {
        let msg = format!("{name} = {v:.3} (target {t} ±{tol})");
        if (v - t).abs() <= tol {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    all(vec![
        check("kappa=300", na, 110.6, 1.5),
        check("kappa=7000", nb, 2500.0, 2.0),
    ])
}

fn exact_cooling() -> Check {
    let q = QuadratureSpec::default();
    let below = |name: &str, p: &SystemParams, limit: f64| {
        let r = exact_n0(p, &q).map_err(|e| format!("{name}: {e}"))?;
        let msg = format!("{name} n0 = {:.5} (< {limit})", r.n0);
        if r.n0 < limit {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    all(vec![
        below("fig4a", &presets::fig4a(), 0.05),
        below("fig4b", &presets::fig4b(), 1.1),
    ])
}

fn oracle_equivalence() -> Check {
    let base = presets::fig6();
    let points: Vec<SystemParams> = (0..10)
        .flat_map(|i| {
            (0..10).map(move |j| {
                base.with("g1as", 0.25 + 0.2 * i as f64 / 9.0)
                    .with("delta", 0.3 + 0.2 * j as f64 / 9.0)
            })
        })
        .collect();
    let results: Vec<Option<f64>> = points
        .par_iter()
        .map(|p| {
            let st = stability(&build_drift(p), STABILITY_TOL).ok()?;
            if !st.stable {
                return None;
            }
            let a = exact_n0(p, &QuadratureSpec::default()).ok()?.n0;
            let b = lyapunov_n0(p).ok()?.n0;
            Some(rel(a, b))
        })
        .collect();
    let stable: Vec<f64> = results.iter().flatten().copied().collect();
    let worst = stable.iter().copied().fold(0.0, f64::max);
    let msg = format!(
        "{} of 100 grid points stable, max relative deviation {worst:.2e} (< 1e-3)",
        stable.len()
    );
    if stable.len() >= 50 && worst < 1e-3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn appendix_transcription() -> Check {
    let p = presets::fig2();
    let drift = build_drift(&p);
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        // Half the samples near the mechanical resonances, half across the cavity line.
        let w = if k % 2 == 0 {
            rng.gen_range(-2.0..2.0)
        } else {
            rng.gen_range(-1000.0..1000.0)
        };
        let a = appendix_coefficients(&p, w).map_err(|e| e.to_string())?;
        let b = direct_coefficients(&drift, w).map_err(|e| e.to_string())?;
        for (x, y) in a.as_array().iter().zip(&b.as_array()) {
            worst = worst.max((x - y).norm() / x.norm().max(y.norm()));
        }
    }
    let msg =
        format!("max elementwise relative difference {worst:.2e} over 100 frequencies (< 1e-9)");
    if worst < 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn dissipative_null() -> Check {
    let p = presets::fig2().with("delta", 0.5);
    let minus = force_spectrum(&p, -p.omega1);
    let plus = force_spectrum(&p, p.omega1);
    let msg = format!(
        "S_FF[-w1] / S_FF[w1] = {:.1e} at delta = w1/2",
        minus / plus
    );
    if minus.abs() <= 1e-12 * plus {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn perturbative_agreement() -> Check {
    let q = QuadratureSpec::default();
    let decade: Vec<f64> = (0..5).map(|i| 10f64.powf(-4.0 + i as f64 / 4.0)).collect();
    let mut worst: f64 = 0.0;
    for pt in contribution_profile(&presets::fig5(), &decade, &q) {
        let exact = pt.exact.map_err(|e| e.to_string())?.n0;
        let pred = pt.qnoise.map_err(|e| e.to_string())?;
        worst = worst.max(rel(pred, exact));
    }
    let small = if worst < 0.10 {
        Ok(format!(
            "G0 in [1e-4, 1e-3]: max |qnoise - exact| / exact = {worst:.4}"
        ))
    } else {
        Err(format!(
            "G0 in [1e-4, 1e-3]: max deviation {worst:.4} (>= 0.10)"
        ))
    };

    let profile: Vec<f64> = (0..31)
        .map(|i| 10f64.powf(-4.0 + (0.2f64.log10() + 4.0) * i as f64 / 30.0))
        .collect();
    let pts: Vec<_> = contribution_profile(&presets::fig5(), &profile, &q)
        .into_iter()
        .filter_map(|p| p.exact.ok().map(|r| (p.g0as, r)))
        .collect();
    let opt = pts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.n0.total_cmp(&b.1 .1.n0))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let past: Vec<_> = pts[opt + 1..].to_vec();
    let dominated = past
        .iter()
        .rev()
        .take_while(|(_, r)| r.n0_drive > r.n0_local && r.n0_drive > r.n0_ancilla)
        .count();
    let large = match past.last() {
        Some((g, r)) if dominated > 0 => Ok(format!(
            "optimum at G0 = {:.4}; drive term largest for the last {dominated} stable points \
             (G0 = {g:.4}: drive {:.3}, local {:.3}, ancilla {:.3})",
            pts[opt].0, r.n0_drive, r.n0_local, r.n0_ancilla
        )),
        _ => Err(format!(
            "drive term not dominant past the optimum (optimum index {opt})"
        )),
    };
    all(vec![small, large])
}

fn stability_flags() -> Check {
    let verdict = |p: &SystemParams| {
        stability(&build_drift(p), STABILITY_TOL)
            .map(|s| s.stable)
            .unwrap_or(false)
    };
    let mut parts = Vec::new();
    let blue = presets::fig2().with("delta", -1.0);
    parts.push(if !verdict(&blue) {
        Ok("delta = -w1 with fig2 couplings: unstable".to_string())
    } else {
        Err("delta = -w1 with fig2 couplings flagged stable".to_string())
    });
    let blue4 = presets::fig4a().with("delta", -1.0);
    parts.push(if !verdict(&blue4) {
        Ok("delta = -w1 with fig4a couplings: unstable".to_string())
    } else {
        Err("delta = -w1 with fig4a couplings flagged stable".to_string())
    });
    for p in presets::all() {
        parts.push(if verdict(&p.params) {
            Ok(format!("{} stable", p.name))
        } else {
            Err(format!("{} flagged unstable", p.name))
        });
    }
    all(parts)
}

fn property_suite() -> Check {
    let mut parts = Vec::new();

    let p0 = presets::fig3().with("g1as", 0.0);
    let exact_reduction = (0..2001)
        .map(|i| -300.0 + 0.3 * i as f64)
        .all(|w| full_nn_spectrum(&p0, w) == bare_nn_spectrum(&p0, w));
    parts.push(if exact_reduction {
        Ok("G1 = 0: full == bare on 2001 frequencies".to_string())
    } else {
        Err("G1 = 0: full spectrum differs from bare".to_string())
    });

    for (name, p) in [("fig2", presets::fig2()), ("fig3", presets::fig3())] {
        let eff = effective_ancilla(&p).map_err(|e| e.to_string())?;
        let ratio = eff.position_spectrum(eff.omega1_eff) / eff.position_spectrum(-eff.omega1_eff);
        let target = 1.0 + 1.0 / eff.n1_eff;
        parts.push(if rel(ratio, target) < 0.01 {
            Ok(format!(
                "{name} peak ratio {ratio:.3} vs 1 + 1/n1_eff = {target:.3}"
            ))
        } else {
            Err(format!("{name} peak ratio {ratio:.3} vs {target:.3}"))
        });
    }

    let mut negatives = 0;
    let mut samples = 0;
    for p in [
        presets::fig2(),
        presets::fig4a(),
        presets::fig4b(),
        presets::fig6(),
    ] {
        let drift = build_drift(&p);
        for i in 0..4001 {
            let w = -2000.0 + i as f64;
            let fine = 0.5 * (i as f64 - 2000.0) / 1000.0;
            for x in [w, fine] {
                samples += 1;
                match n0_integrand(&drift, x) {
                    Ok(v) if v.iter().all(|c| *c >= 0.0) => {}
                    _ => negatives += 1,
                }
            }
        }
    }
    parts.push(if negatives == 0 {
        Ok(format!("integrand >= 0 at {samples} samples"))
    } else {
        Err(format!(
            "integrand negative or failed at {negatives} of {samples} samples"
        ))
    });

    let spec = SweepSpec {
        axis1: AxisSpec::parse("g1as:0.25:0.45:6").unwrap(),
        axis2: Some(AxisSpec::parse("delta:-0.2:0.5:5").unwrap()),
        outputs: vec![
            OutputKind::N0,
            OutputKind::Contributions,
            OutputKind::Stability,
            OutputKind::QnoisePrediction,
        ],
    };
    let q = QuadratureSpec::default();
    let csv = |jobs| {
        run_sweep(&presets::fig6(), &spec, &q, Some(jobs))
            .map(|r| sweep_csv(&r))
            .map_err(|e| e.to_string())
    };
    let one = csv(1)?;
    let four = csv(4)?;
    let seven = csv(7)?;
    parts.push(if one == four && one == seven {
        Ok(format!(
            "sweep CSV byte-identical for 1/4/7 workers ({} bytes)",
            one.len()
        ))
    } else {
        Err("sweep CSV differs across worker counts".to_string())
    });

    all(parts)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("effective frequency", effective_frequency),
        ("spectrum values", spectrum_values),
        ("sideband-cooling baselines", sideband_baselines),
        ("exact cooling in the unresolved regime", exact_cooling),
        ("oracle equivalence", oracle_equivalence),
        ("closed-form coefficients", appendix_transcription),
        ("dissipative null", dissipative_null),
        ("perturbative agreement", perturbative_agreement),
        ("stability", stability_flags),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let r = check();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS  {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.2}s]: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
