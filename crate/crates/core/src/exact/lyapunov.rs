use nalgebra::{DMatrix, DVector, Matrix6};

use super::cooling::{CoolingResult, STABILITY_TOL};
use super::drift::{build_drift, stability, DriftSystem};
use crate::numerics::sum::sum;
use crate::{Error, Result, SystemParams, C64};

/// Solves `M C + C M^H + D = 0` for each diffusion matrix in `ds`, sharing one LU.
fn solve_lyapunov(m: &Matrix6<C64>, ds: &[Matrix6<C64>]) -> Result<Vec<Matrix6<C64>>> {
    // Column-major vec: vec(M C) = (I (x) M) vec C, vec(C M^H) = (conj(M) (x) I) vec C.
    let mut a = DMatrix::<C64>::zeros(36, 36);
    for j in 0..6 {
        for i in 0..6 {
            let row = i + 6 * j;
            for k in 0..6 {
                a[(row, k + 6 * j)] += m[(i, k)];
                a[(row, i + 6 * k)] += m[(j, k)].conj();
            }
        }
    }
    let lu = a.lu();
    ds.iter()
        .map(|d| {
            let rhs = DVector::from_iterator(36, d.iter().map(|z| -z));
            let x = lu
                .solve(&rhs)
                .ok_or_else(|| Error::Singular("Lyapunov operator".into()))?;
            if x.iter().any(|z| !z.is_finite()) {
                return Err(Error::Singular("Lyapunov operator".into()));
            }
            Ok(Matrix6::from_iterator(x.iter().copied()))
        })
        .collect()
}

fn diffusion(drift: &DriftSystem, channels: &[usize]) -> Matrix6<C64> {
    let w = drift.correlators.weights();
    let mut n = Matrix6::<C64>::zeros();
    for &c in channels {
        n[(c, c)] = C64::from(w[c]);
    }
    drift.noise_map * n * drift.noise_map.adjoint()
}

fn checked_drift(params: &SystemParams) -> Result<DriftSystem> {
    let p = params.checked()?;
    let drift = build_drift(&p);
    let st = stability(&drift, STABILITY_TOL)?;
    if !st.stable {
        return Err(Error::Unstable { margin: st.margin });
    }
    Ok(drift)
}

/// Steady-state second moments `C = <V V†>` over `(d, d†, b0, b0†, b1, b1†)`.
///
/// `C[(3, 3)] = <b0† b0>` and `C[(5, 5)] = <b1† b1>`.
pub fn lyapunov_covariance(params: &SystemParams) -> Result<Matrix6<C64>> {
    let drift = checked_drift(params)?;
    let d = diffusion(&drift, &[0, 1, 2, 3, 4, 5]);
    Ok(solve_lyapunov(&drift.m, &[d])?.remove(0))
}

/// Target occupation from the steady-state covariance, one solve per noise source.
pub fn lyapunov_n0(params: &SystemParams) -> Result<CoolingResult> {
    let drift = checked_drift(params)?;
    let ds = [
        diffusion(&drift, &[0, 1]),
        diffusion(&drift, &[2, 3]),
        diffusion(&drift, &[4, 5]),
    ];
    let cs = solve_lyapunov(&drift.m, &ds)?;
    let parts = [cs[0][(3, 3)].re, cs[1][(3, 3)].re, cs[2][(3, 3)].re];
    Ok(CoolingResult {
        n0: sum(parts),
        n0_drive: parts[0],
        n0_local: parts[1],
        n0_ancilla: parts[2],
        stable: true,
        integration_error_estimate: 0.0,
    })
}
