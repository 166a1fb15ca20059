use nalgebra::{Matrix2, Matrix6, Vector6};

use crate::{Error, Result, SystemParams, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Occupations of the three input baths.
///
/// The drive input is vacuum, so `<d_in d_in†> = 1` and `<d_in† d_in> = 0`; the
/// mechanical baths are thermal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawCorrelators {
    pub nth0: f64,
    pub nth1: f64,
}

impl RawCorrelators {
    /// Diagonal of `<u u†>` in the input ordering.
    pub fn weights(&self) -> [f64; 6] {
        [
            1.0,
            0.0,
            self.nth0 + 1.0,
            self.nth0,
            self.nth1 + 1.0,
            self.nth1,
        ]
    }
}

/// Drift matrix and noise map of the linearised equations.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftSystem {
    pub params: SystemParams,
    pub m: Matrix6<C64>,
    pub noise_map: Matrix6<C64>,
    pub correlators: RawCorrelators,
}

pub fn build_drift(p: &SystemParams) -> DriftSystem {
    let (d, k) = (p.delta, p.kappa);
    let (g0, g1) = (p.g0as, p.g1as);
    let z = C64::new(0.0, 0.0);
    let cav = I * d + k / 2.0;
    let cav_c = -I * d + k / 2.0;

    #[rustfmt::skip]
    let m = Matrix6::new(
        I * d - k / 2.0, z, I * g0, I * g0, -g1 * cav, -g1 * cav,
        z, -I * d - k / 2.0, -I * g0, -I * g0, -g1 * cav_c, -g1 * cav_c,
        I * g0, I * g0, -(I * p.omega0 + p.gamma0 / 2.0), z, z, z,
        -I * g0, -I * g0, z, -(-I * p.omega0 + p.gamma0 / 2.0), z, z,
        -I * g1 * d - g1 * k / 2.0, -I * g1 * d + g1 * k / 2.0, z, z, -(I * p.omega1 + p.gamma1 / 2.0), z,
        I * g1 * d + g1 * k / 2.0, I * g1 * d - g1 * k / 2.0, z, z, z, -(-I * p.omega1 + p.gamma1 / 2.0),
    );

    let sk = k.sqrt();
    let mut noise_map = Matrix6::from_diagonal(&Vector6::new(
        C64::from(-sk),
        C64::from(-sk),
        C64::from(-p.gamma0.sqrt()),
        C64::from(-p.gamma0.sqrt()),
        C64::from(-p.gamma1.sqrt()),
        C64::from(-p.gamma1.sqrt()),
    ));
    // The dissipative coupling feeds the cavity input noise straight into the ancilla.
    noise_map[(4, 0)] = C64::from(-g1 * sk);
    noise_map[(4, 1)] = C64::from(g1 * sk);
    noise_map[(5, 0)] = C64::from(g1 * sk);
    noise_map[(5, 1)] = C64::from(-g1 * sk);

    DriftSystem {
        params: *p,
        m,
        noise_map,
        correlators: RawCorrelators {
            nth0: p.nth0,
            nth1: p.nth1,
        },
    }
}

impl DriftSystem {
    /// Largest deviation of `M` (and of the noise map) from its own hermitian-partner image
    /// `P conj(M) P`, where `P` swaps each operator with its adjoint.
    pub fn conjugation_defect(&self) -> f64 {
        let swap = |i: usize| i ^ 1;
        let mut worst: f64 = 0.0;
        for a in [&self.m, &self.noise_map] {
            for i in 0..6 {
                for j in 0..6 {
                    worst = worst.max((a[(i, j)] - a[(swap(i), swap(j))].conj()).norm());
                }
            }
        }
        worst
    }

    /// Eigenvalues of `M`, sorted by imaginary then real part.
    pub fn eigenvalues(&self) -> Result<[C64; 6]> {
        let schur = nalgebra::Schur::try_new(self.m, 1e-15, 10_000)
            .ok_or_else(|| Error::EigenSolver("Schur iteration did not converge".into()))?;
        let (_, t) = schur.unpack();
        let mut out = [C64::new(0.0, 0.0); 6];
        let scale = self.m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut i = 0;
        while i < 6 {
            if i + 1 < 6 && t[(i + 1, i)].norm() > 1e-14 * scale {
                let block =
                    Matrix2::new(t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
                let (a, b) = eig2(&block);
                out[i] = a;
                out[i + 1] = b;
                i += 2;
            } else {
                out[i] = t[(i, i)];
                i += 1;
            }
        }
        if out.iter().any(|z| !z.is_finite()) {
            return Err(Error::EigenSolver(format!(
                "non-finite eigenvalues {out:?}"
            )));
        }
        out.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        Ok(out)
    }
}

fn eig2(b: &Matrix2<C64>) -> (C64, C64) {
    let tr = b[(0, 0)] + b[(1, 1)];
    let det = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)];
    let disc = (tr * tr / 4.0 - det).sqrt();
    (tr / 2.0 + disc, tr / 2.0 - disc)
}

/// Stability verdict of a drift system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// `-max Re(eigenvalue)`; positive for a stable system.
    pub margin: f64,
}

/// The system is stable when every eigenvalue of `M` has real part below `-tol`.
pub fn stability(drift: &DriftSystem, tol: f64) -> Result<Stability> {
    let eig = drift.eigenvalues()?;
    let max_re = eig.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(Stability {
        stable: max_re < -tol,
        margin: -max_re,
    })
}
