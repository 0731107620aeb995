//! Shared numeric helpers: log-space accumulation, log-factorials,
//! golden-section search, and a small deterministic generator.

/// 1 / sqrt(2*pi), the normalizing constant of the standard normal density.
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Golden ratio minus one, the section step of golden-section search.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Standard normal density.
#[inline]
pub fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Numerically stable log(sum(exp(terms))).
///
/// Terms equal to negative infinity contribute nothing; an empty or
/// all-impossible set of terms yields negative infinity.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// `x * ln(y)` with the `0 * ln(0) = 0` convention for vanishing counts.
#[inline]
pub fn count_ln(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Cumulative table of ln(k!) for k = 0..=n.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// ln(C(n, k)) from a precomputed `ln_factorials` table covering n.
#[inline]
pub fn ln_choose(lnfact: &[f64], n: usize, k: usize) -> f64 {
    debug_assert!(k <= n && n < lnfact.len());
    lnfact[n] - lnfact[k] - lnfact[n - k]
}

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
///
/// Returns the abscissa of the maximum. Degenerate brackets (lo == hi)
/// return the single point.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> f64 {
    debug_assert!(lo <= hi);
    if hi - lo <= tol {
        return 0.5 * (lo + hi);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink the bracket by phi^200; the tolerance check
    // terminates long before that for any sane input.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
pub fn golden_section_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    golden_section_max(move |x| -f(x), lo, hi, tol)
}

/// SplitMix64 step; a tiny deterministic generator for seeded restarts.
#[inline]
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform draw in (0, 1) from the seeded generator.
#[inline]
pub(crate) fn uniform_open01(state: &mut u64) -> f64 {
    // 53 high bits, shifted into (0, 1); +0.5 keeps the draw away from 0.
    ((splitmix64(state) >> 11) as f64 + 0.5) / (1u64 << 53) as f64
}
