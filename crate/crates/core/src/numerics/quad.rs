//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature for vector-valued integrands.
//!
//! The caller supplies the initial panelling: finite intervals whose endpoints should
//! sit on the integrand's features, plus optional semi-infinite tails. Tails are mapped
//! onto `t in (0, 1]` with `x = ±L / t`, which is well behaved for integrands decaying at
//! least as `1/x^2`. The worst panel is bisected until the summed error estimate meets
//! the tolerance. Panel values are accumulated in a fixed order with compensated
//! summation, so the result does not depend on the refinement history.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::sum::NeumaierSum;
use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208031826302,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// One initial integration region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// `[from, +inf)`, `from > 0`.
    UpperTail(f64),
    /// `(-inf, to]`, `to < 0`.
    LowerTail(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_panels: 50_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<const N: usize> {
    pub value: [f64; N],
    /// Sum over panels and components of `|K21 - G10|`.
    pub error: f64,
    pub panels: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Map {
    Identity,
    Upper(f64),
    Lower(f64),
}

impl Map {
    /// Returns `(x, dx/dt)`.
    fn apply(self, t: f64) -> (f64, f64) {
        match self {
            Map::Identity => (t, 1.0),
            Map::Upper(l) => (l / t, l / (t * t)),
            Map::Lower(l) => (-l / t, l / (t * t)),
        }
    }

    fn rank(self) -> u8 {
        match self {
            Map::Lower(_) => 0,
            Map::Identity => 1,
            Map::Upper(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    map: Map,
    lo: f64,
    hi: f64,
    value: [f64; N],
    error: f64,
    seq: usize,
}

impl<const N: usize> Panel<N> {
    fn splittable(&self) -> bool {
        let mid = 0.5 * (self.lo + self.hi);
        mid > self.lo && mid < self.hi && (self.hi - self.lo) > 4.0 * f64::EPSILON * mid.abs()
    }
}

// Max-heap on error; ties broken by creation order so refinement is deterministic.
impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn kronrod<const N: usize, F>(f: &mut F, map: Map, lo: f64, hi: f64) -> ([f64; N], f64)
where
    F: FnMut(f64) -> [f64; N],
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |t: f64| {
        let (x, jac) = map.apply(t);
        let mut y = f(x);
        for v in y.iter_mut() {
            *v *= jac;
        }
        y
    };

    let fc = eval(centre);
    let mut resk = [0.0; N];
    let mut resg = [0.0; N];
    for c in 0..N {
        resk[c] = WGK[10] * fc[c];
    }
    for (j, (&x, &wk)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let f1 = eval(centre - dx);
        let f2 = eval(centre + dx);
        for c in 0..N {
            let s = f1[c] + f2[c];
            resk[c] += wk * s;
            if j % 2 == 1 {
                resg[c] += WG[j / 2] * s;
            }
        }
    }
    let mut err = 0.0;
    for c in 0..N {
        resk[c] *= half;
        resg[c] *= half;
        err += (resk[c] - resg[c]).abs();
    }
    (resk, err)
}

/// Integrates `f` over the union of `intervals`.
///
/// The intervals must not overlap. Fails with [`Error::NonConvergence`] when the
/// tolerance is not met within `max_panels` panels or a panel can no longer be split.
pub fn integrate<const N: usize, F>(
    mut f: F,
    intervals: &[Interval],
    opts: &QuadOptions,
) -> Result<QuadResult<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    let mut evaluations = 0usize;
    let mut push = |heap: &mut BinaryHeap<Panel<N>>, f: &mut F, map, lo, hi| {
        let (value, error) = kronrod(f, map, lo, hi);
        evaluations += 21;
        heap.push(Panel {
            map,
            lo,
            hi,
            value,
            error,
            seq,
        });
        seq += 1;
    };

    for iv in intervals {
        match *iv {
            Interval::Finite(a, b) if a < b => push(&mut heap, &mut f, Map::Identity, a, b),
            Interval::Finite(_, _) => {}
            Interval::UpperTail(l) => push(&mut heap, &mut f, Map::Upper(l), 0.0, 1.0),
            Interval::LowerTail(l) => push(&mut heap, &mut f, Map::Lower(-l), 0.0, 1.0),
        }
    }

    let totals = |heap: &BinaryHeap<Panel<N>>| {
        let mut err = NeumaierSum::new();
        let mut mag = NeumaierSum::new();
        for p in heap.iter() {
            err += p.error;
            for v in p.value {
                mag += v;
            }
        }
        (err.value(), mag.value().abs())
    };

    loop {
        let (err, mag) = totals(&heap);
        if err <= opts.abs_tol.max(opts.rel_tol * mag) {
            break;
        }
        let worst = match heap.peek() {
            Some(p) if heap.len() < opts.max_panels && p.splittable() => heap.pop().unwrap(),
            _ => {
                return Err(Error::NonConvergence {
                    estimate: mag,
                    error: err,
                    panels: heap.len(),
                })
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        push(&mut heap, &mut f, worst.map, worst.lo, mid);
        push(&mut heap, &mut f, worst.map, mid, worst.hi);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|a, b| a.map.rank().cmp(&b.map.rank()).then(a.lo.total_cmp(&b.lo)));
    let mut value = [0.0; N];
    let mut error = NeumaierSum::new();
    for (c, slot) in value.iter_mut().enumerate() {
        *slot = panels
            .iter()
            .map(|p| p.value[c])
            .sum::<NeumaierSum>()
            .value();
    }
    for p in &panels {
        error += p.error;
    }
    Ok(QuadResult {
        value,
        error: error.value(),
        panels: panels.len(),
        evaluations,
    })
}
