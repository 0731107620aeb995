//! The observed-range maximum likelihood estimator of a distribution
//! function under interval censoring, in one and M dimensions.
//!
//! At an evaluation point the censoring leaves the true at-or-below count
//! known only to lie in the range `[d, d+u]`. The estimator maximizes the
//! binomial-sum likelihood of that event; the maximizer has a closed form,
//! implemented here next to a brute-force maximizer used for verification.

use rayon::prelude::*;

use crate::array::GridArray;
use crate::censored::{
    build_grid, count_at, CensoredScalar, CensoredVector, CountTriple, Grid, Sample,
};
use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, ln_factorials};

/// Default cap on the number of grid points a full-grid evaluation may visit.
pub const DEFAULT_MAX_GRID_POINTS: u64 = 100_000_000;

/// A fitted distribution function over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfEstimate {
    grid: Grid,
    values: GridArray,
}

impl CdfEstimate {
    /// Wrap grid values as a distribution estimate.
    ///
    /// Values must lie in [0, 1] and, in one dimension, be non-decreasing
    /// along the axis. No monotonicity is required in higher dimensions.
    pub fn new(grid: Grid, values: GridArray) -> Result<Self> {
        if values.shape() != grid.shape().as_slice() {
            return Err(Error::ShapeMismatch {
                expected: grid.shape(),
                found: values.shape().to_vec(),
            });
        }
        if values.as_slice().iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidCdfValue);
        }
        if grid.dimension() == 1 {
            for w in values.as_slice().windows(2) {
                if w[1] < w[0] {
                    return Err(Error::NonMonotoneCdf);
                }
            }
        }
        Ok(CdfEstimate { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &GridArray {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.grid.dimension()
    }

    pub fn value_at(&self, idx: &[usize]) -> f64 {
        self.values.get(idx)
    }
}

/// Closed-form maximizer of the observed-range binomial-sum likelihood.
///
/// Returns 0 when nothing is known to be at or below the point but
/// something is known to be above, 1 in the mirrored case, 1/2 when every
/// observation straddles the point, and otherwise `1 / (1 + r)` with `r`
/// the (u+1)-th root of `prod_{k=0..u} (a+k)/(d+k)`, evaluated as a mean
/// of log differences so large `u` cannot overflow.
pub fn closed_form_fhat(counts: CountTriple) -> f64 {
    let n = counts.total();
    debug_assert!(n >= 1, "counts must describe at least one observation");
    let CountTriple { d, u, a } = counts;
    if d == 0 && a >= 1 {
        return 0.0;
    }
    if a == 0 && d >= 1 {
        return 1.0;
    }
    if u == n {
        return 0.5;
    }
    // d = 0 and a = 0 with u < N is arithmetically impossible.
    debug_assert!(d >= 1 && a >= 1);
    if u == 0 {
        return d as f64 / n as f64;
    }
    let mut log_ratio = 0.0;
    for k in 0..=u {
        log_ratio += ((a + k) as f64).ln() - ((d + k) as f64).ln();
    }
    let r = (log_ratio / (u + 1) as f64).exp();
    1.0 / (1.0 + r)
}

/// Log of the binomial-sum likelihood `sum_{k=d}^{d+u} C(N,k) p^k (1-p)^{N-k}`.
///
/// Bands touching a boundary of the count range are evaluated through the
/// complementary tail, `log1p(-tail)`, which stays accurate where the
/// direct sum of near-unit terms would drown the optimum in rounding
/// noise.
fn band_log_likelihood(n: usize, d: usize, u: usize, ln_fact: &[f64], p: f64) -> f64 {
    if p <= 0.0 {
        return if d == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if p >= 1.0 {
        return if d + u == n { 0.0 } else { f64::NEG_INFINITY };
    }
    let lp = p.ln();
    let lq = (-p).ln_1p();
    // Streaming log-sum-exp over a count range.
    let lse = |lo: usize, hi: usize| -> f64 {
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for k in lo..=hi {
            let t = ln_fact[n] - ln_fact[k] - ln_fact[n - k] + k as f64 * lp + (n - k) as f64 * lq;
            if t <= max {
                sum += (t - max).exp();
            } else {
                sum = sum * (max - t).exp() + 1.0;
                max = t;
            }
        }
        max + sum.ln()
    };
    if d == 0 && d + u == n {
        return 0.0;
    }
    if d == 0 {
        let tail = lse(u + 1, n).exp();
        return if tail >= 1.0 {
            f64::NEG_INFINITY
        } else {
            (-tail).ln_1p()
        };
    }
    if d + u == n {
        let tail = lse(0, d - 1).exp();
        return if tail >= 1.0 {
            f64::NEG_INFINITY
        } else {
            (-tail).ln_1p()
        };
    }
    lse(d, d + u)
}

/// Brute-force maximizer of the observed-range likelihood, for verification.
///
/// Scans the uniform grid `{i/resolution}` and refines the bracketing
/// subinterval with one golden-section pass on the log-likelihood. When
/// every observation straddles the point the likelihood is identically 1
/// and the conventional midpoint 1/2 is returned.
pub fn likelihood_oracle(counts: CountTriple, resolution: u32) -> f64 {
    assert!(resolution >= 1_000, "resolution must be at least 1000");
    let n = counts.total();
    debug_assert!(n >= 1);
    let CountTriple { d, u, .. } = counts;
    if u == n {
        return 0.5;
    }
    let ln_fact = ln_factorials(n);
    let res = resolution as f64;
    let mut best_i = 0u32;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=resolution {
        let v = band_log_likelihood(n, d, u, &ln_fact, i as f64 / res);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = if best_i == 0 {
        0.0
    } else {
        (best_i - 1) as f64 / res
    };
    let hi = ((best_i + 1) as f64 / res).min(1.0);
    golden_section_max(|p| band_log_likelihood(n, d, u, &ln_fact, p), lo, hi, 1e-12)
}

/// The distribution estimate at a single point.
pub fn estimate_cdf_at(sample: &Sample, point: &[f64]) -> Result<f64> {
    Ok(closed_form_fhat(count_at(sample, point)?))
}

/// The distribution estimate over the sample's own endpoint grid.
pub fn estimate_cdf_grid(sample: &Sample) -> Result<CdfEstimate> {
    estimate_cdf_grid_capped(sample, DEFAULT_MAX_GRID_POINTS)
}

/// As [`estimate_cdf_grid`], with an explicit cap on grid size.
pub fn estimate_cdf_grid_capped(sample: &Sample, max_points: u64) -> Result<CdfEstimate> {
    let grid = build_grid(sample)?;
    let points = grid.num_points();
    if points > max_points as u128 {
        return Err(Error::GridTooLarge {
            points,
            cap: max_points,
        });
    }
    estimate_cdf_on_grid(sample, &grid)
}

/// Evaluate the estimator at every point of an explicit grid.
///
/// The grid need not be the sample's own; leave-one-out machinery holds
/// the full-sample grid fixed while re-estimating on subsamples.
pub fn estimate_cdf_on_grid(sample: &Sample, grid: &Grid) -> Result<CdfEstimate> {
    if grid.dimension() != sample.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sample.dimension(),
            found: grid.dimension(),
        });
    }
    let shape = grid.shape();
    let template = GridArray::zeros(&shape);
    let len = template.len();
    let values: Vec<f64> = (0..len)
        .into_par_iter()
        .map(|flat| {
            let mut idx = vec![0usize; shape.len()];
            template.decode(flat, &mut idx);
            let mut point = vec![0.0; shape.len()];
            grid.write_point(&idx, &mut point);
            let counts =
                count_at(sample, &point).expect("grid points are finite and dimension-checked");
            closed_form_fhat(counts)
        })
        .collect();
    let values = GridArray::from_vec(&shape, values)?;
    CdfEstimate::new(grid.clone(), values)
}

/// One observation of a censoring mechanism: the interval that was
/// recorded and, when the value itself was observed, the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensoringTriple {
    observed: Option<f64>,
    lower: f64,
    upper: f64,
}

impl CensoringTriple {
    /// Both interval endpoints must be finite with `lower < upper`; the
    /// observed value, when present, must be finite.
    pub fn new(observed: Option<f64>, lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::InvalidInterval { lower, upper });
        }
        if let Some(v) = observed {
            if !v.is_finite() {
                return Err(Error::NonFiniteExact(v));
            }
        }
        Ok(CensoringTriple {
            observed,
            lower,
            upper,
        })
    }

    pub fn observed(&self) -> Option<f64> {
        self.observed
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }
}

/// Estimate the joint distribution of (value, lower endpoint, upper
/// endpoint), describing how the censoring mechanism operates.
///
/// Each triple becomes a 3-vector observation: coordinate 1 is the value
/// itself, exact when observed and otherwise censored into its interval;
/// coordinates 2 and 3 are the exactly-known endpoints. The result is the
/// full-grid estimate of that 3-dimensional sample.
pub fn estimate_censoring_mechanism(triples: &[CensoringTriple]) -> Result<CdfEstimate> {
    if triples.is_empty() {
        return Err(Error::EmptySample);
    }
    let observations = triples
        .iter()
        .map(|t| {
            let value = match t.observed {
                Some(v) => CensoredScalar::exact(v)?,
                None => CensoredScalar::interval(t.lower, t.upper)?,
            };
            CensoredVector::new(vec![
                value,
                CensoredScalar::exact(t.lower)?,
                CensoredScalar::exact(t.upper)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    estimate_cdf_grid(&Sample::new(observations)?)
}
