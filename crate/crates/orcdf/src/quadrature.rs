//! Adaptive Simpson quadrature in one dimension and iterated over boxes.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || depth >= MAX_DEPTH {
        // At the depth cap the subinterval is ~1e-14 of the original
        // range, so even a jump discontinuity contributes nothing
        // measurable; accept the refined estimate.
        return left + right + delta / 15.0;
    }
    let lv = adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    let rv = adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    lv + rv
}

/// Integrate `f` over [a, b] to the given absolute tolerance.
///
/// The interval is first split into 16 panels so that narrow features
/// (compact kernels on a wide window) are not missed by the initial
/// Simpson estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let panels = 16;
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == panels { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let (fa, fm, fb) = (f(lo), f(mid), f(hi));
        let whole = simpson(fa, fm, fb, lo, hi);
        total += adaptive(f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 0);
    }
    if !total.is_finite() {
        return Err(Error::QuadratureNonConvergence);
    }
    Ok(total)
}

/// Integrate `f` over [a, b] to a relative tolerance, with an absolute floor.
pub fn integrate_rel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    // Coarse composite estimate to scale the absolute tolerance.
    let panels = 64;
    let width = (b - a) / panels as f64;
    let mut coarse = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let hi = lo + width;
        coarse += simpson(f(lo), f(0.5 * (lo + hi)), f(hi), lo, hi);
    }
    let tol = (rel_tol * coarse.abs()).max(1e-14);
    integrate(f, a, b, tol)
}

/// Iterated adaptive quadrature of `f` over the axis-aligned box
/// `[lo[0], hi[0]] x ... x [lo[M-1], hi[M-1]]`.
///
/// Inner dimensions are integrated with proportionally tighter tolerance;
/// suitable for smooth integrands at small M.
pub fn integrate_box<F: Fn(&[f64]) -> f64>(f: &F, lo: &[f64], hi: &[f64], tol: f64) -> Result<f64> {
    assert_eq!(lo.len(), hi.len());
    assert!(!lo.is_empty());
    integrate_box_level(f, lo, hi, tol, &[])
}

fn integrate_box_level<F: Fn(&[f64]) -> f64>(
    f: &F,
    lo: &[f64],
    hi: &[f64],
    tol: f64,
    prefix: &[f64],
) -> Result<f64> {
    let dim = prefix.len();
    let last = dim + 1 == lo.len();
    let g = |x: f64| -> f64 {
        let mut p = prefix.to_vec();
        p.push(x);
        if last {
            f(&p)
        } else {
            integrate_box_level(f, lo, hi, tol * 0.1, &p).unwrap_or(f64::NAN)
        }
    };
    let v = integrate(&g, lo[dim], hi[dim], tol)?;
    if v.is_nan() {
        return Err(Error::QuadratureNonConvergence);
    }
    Ok(v)
}
