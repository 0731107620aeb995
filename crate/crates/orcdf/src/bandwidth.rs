//! Least-squares cross-validation for the censored density estimator:
//! the score trades the integrated squared density against leave-one-out
//! densities evaluated at interval midpoints.

use rayon::prelude::*;

use crate::censored::{build_grid, CensoredScalar, Grid, Sample};
use crate::error::{Error, Result};
use crate::estimator::estimate_cdf_on_grid;
use crate::kde::{density_at, weights_md, Bandwidth, Kernel, WeightTable};
use crate::numeric::{golden_section_min, normal_pdf};
use crate::quadrature;

/// Default number of log-spaced candidates per dimension.
pub const DEFAULT_CANDIDATES: usize = 32;

/// Default cap on the number of bandwidth combinations scanned exhaustively.
pub const DEFAULT_SCAN_CAP: usize = 4096;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Per-observation, per-coordinate midpoint surrogates for the censored values.
#[derive(Debug, Clone, PartialEq)]
pub struct Midpoints(Vec<Vec<f64>>);

impl Midpoints {
    pub fn get(&self, n: usize) -> &[f64] {
        &self.0[n]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.0.iter().map(|v| v.as_slice())
    }
}

/// Interval midpoints, with infinite endpoints replaced by the grid-axis
/// extremes before averaging. Exact coordinates stand for themselves.
pub fn midpoints(sample: &Sample, grid: &Grid) -> Midpoints {
    let mids = sample
        .observations()
        .iter()
        .map(|obs| {
            obs.coords()
                .iter()
                .enumerate()
                .map(|(m, coord)| match *coord {
                    CensoredScalar::Exact(v) => v,
                    CensoredScalar::Interval { lower, upper } => {
                        let axis = grid.axis(m);
                        let lo = if lower.is_finite() { lower } else { axis[0] };
                        let hi = if upper.is_finite() {
                            upper
                        } else {
                            *axis.last().unwrap()
                        };
                        0.5 * (lo + hi)
                    }
                })
                .collect()
        })
        .collect();
    Midpoints(mids)
}

/// One cross-validation score evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreEvaluation {
    pub bandwidth: Bandwidth,
    /// The integrated squared density.
    pub integral_term: f64,
    /// `(2/N) * sum_n f_{-n}(V_n)`.
    pub loo_term: f64,
    /// `integral_term - loo_term`.
    pub score: f64,
}

/// Integrated squared density of the smoothed estimator.
///
/// Gaussian kernels use the closed form: the pairwise product of normal
/// densities integrates to a normal density at the separation with
/// bandwidth `h * sqrt(2)` per axis. Other kernels fall back to adaptive
/// quadrature over the grid bounding box padded by eight bandwidths.
pub fn integral_fhat_squared(
    table: &WeightTable,
    kernel: Kernel,
    bandwidth: &Bandwidth,
) -> Result<f64> {
    let m = table.grid().dimension();
    if bandwidth.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bandwidth.len(),
        });
    }
    let entries: Vec<(&[f64], f64)> = table.nonzero().collect();
    if entries.is_empty() {
        return Ok(0.0);
    }
    let h = bandwidth.components();
    if kernel == Kernel::Gaussian {
        let mut total = 0.0;
        for (i, &(ci, wi)) in entries.iter().enumerate() {
            for (off, &(cj, wj)) in entries[i..].iter().enumerate() {
                let mut k = 1.0;
                for d in 0..m {
                    let s = h[d] * SQRT_2;
                    k *= normal_pdf((ci[d] - cj[d]) / s) / s;
                }
                let contrib = wi * wj * k;
                total += if off == 0 { contrib } else { 2.0 * contrib };
            }
        }
        return Ok(total);
    }
    let (lo, hi): (Vec<f64>, Vec<f64>) = (0..m)
        .map(|d| {
            let axis = table.grid().axis(d);
            (axis[0] - 8.0 * h[d], *axis.last().unwrap() + 8.0 * h[d])
        })
        .unzip();
    let f = |p: &[f64]| {
        let v = density_at(table, kernel, bandwidth, p).unwrap_or(f64::NAN);
        v * v
    };
    if m == 1 {
        return quadrature::integrate_rel(&|x| f(&[x]), lo[0], hi[0], 1e-6);
    }
    // Two passes: a rough value to scale the relative tolerance, then the
    // tight run.
    let rough = quadrature::integrate_box(&f, &lo, &hi, 1e-4)?;
    quadrature::integrate_box(&f, &lo, &hi, (1e-6 * rough.abs()).max(1e-12))
}

/// Leave-one-out density: the estimator refitted without observation `n`
/// but over the full sample's grid, evaluated at `point`.
pub fn loo_density(
    sample: &Sample,
    n: usize,
    kernel: Kernel,
    bandwidth: &Bandwidth,
    point: &[f64],
) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::SampleTooSmall {
            n: sample.len(),
            required: 2,
        });
    }
    let grid = build_grid(sample)?;
    let table = loo_weights(sample, &grid, n)?;
    density_at(&table, kernel, bandwidth, point)
}

fn loo_weights(sample: &Sample, grid: &Grid, n: usize) -> Result<WeightTable> {
    let reduced = sample.leave_one_out(n)?;
    let cdf = estimate_cdf_on_grid(&reduced, grid)?;
    Ok(weights_md(&cdf))
}

/// Precomputed tables shared by every score evaluation on one sample:
/// the full-sample weights, the N leave-one-out weight tables over the
/// fixed full grid, and the midpoint surrogates.
#[derive(Debug, Clone)]
pub struct ScoreContext {
    full: WeightTable,
    loo: Vec<WeightTable>,
    midpoints: Midpoints,
}

impl ScoreContext {
    pub fn new(sample: &Sample) -> Result<Self> {
        if sample.len() < 2 {
            return Err(Error::SampleTooSmall {
                n: sample.len(),
                required: 2,
            });
        }
        let grid = build_grid(sample)?;
        let cdf = estimate_cdf_on_grid(sample, &grid)?;
        let full = weights_md(&cdf);
        let loo = (0..sample.len())
            .into_par_iter()
            .map(|n| loo_weights(sample, &grid, n))
            .collect::<Result<Vec<_>>>()?;
        let midpoints = midpoints(sample, &grid);
        Ok(ScoreContext {
            full,
            loo,
            midpoints,
        })
    }

    /// Evaluate the censored cross-validation score at one bandwidth.
    pub fn evaluate(&self, kernel: Kernel, bandwidth: &Bandwidth) -> Result<ScoreEvaluation> {
        let integral_term = integral_fhat_squared(&self.full, kernel, bandwidth)?;
        let n = self.loo.len();
        let mut loo_sum = 0.0;
        for (table, point) in self.loo.iter().zip(self.midpoints.iter()) {
            loo_sum += density_at(table, kernel, bandwidth, point)?;
        }
        let loo_term = 2.0 / n as f64 * loo_sum;
        Ok(ScoreEvaluation {
            bandwidth: bandwidth.clone(),
            integral_term,
            loo_term,
            score: integral_term - loo_term,
        })
    }
}

/// The censored cross-validation score at one bandwidth.
pub fn score_m0_tilde(
    sample: &Sample,
    kernel: Kernel,
    bandwidth: &Bandwidth,
) -> Result<ScoreEvaluation> {
    ScoreContext::new(sample)?.evaluate(kernel, bandwidth)
}

/// Candidate bandwidths per dimension for the selection scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BandwidthSearchSpec {
    axes: Vec<Vec<f64>>,
    scan_cap: usize,
}

impl BandwidthSearchSpec {
    /// Explicit candidate lists, one ascending positive list per dimension.
    pub fn from_candidates(axes: Vec<Vec<f64>>) -> Result<Self> {
        if axes.is_empty() || axes.iter().any(|a| a.is_empty()) {
            return Err(Error::EmptySearchSpace);
        }
        for axis in &axes {
            if axis.iter().any(|&h| !h.is_finite() || h <= 0.0) {
                return Err(Error::InvalidBandwidth);
            }
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidBandwidth);
            }
        }
        Ok(BandwidthSearchSpec {
            axes,
            scan_cap: DEFAULT_SCAN_CAP,
        })
    }

    /// Log-spaced candidates over `(lo, hi)` ranges, `count` per dimension.
    pub fn log_spaced(ranges: &[(f64, f64)], count: usize) -> Result<Self> {
        if ranges.is_empty() || count == 0 {
            return Err(Error::EmptySearchSpace);
        }
        let axes = ranges
            .iter()
            .map(|&(lo, hi)| {
                if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi < lo {
                    return Err(Error::InvalidBandwidth);
                }
                if count == 1 {
                    return Ok(vec![lo]);
                }
                let step = (hi / lo).ln() / (count - 1) as f64;
                let mut axis: Vec<f64> = (0..count).map(|i| lo * (step * i as f64).exp()).collect();
                axis.dedup();
                Ok(axis)
            })
            .collect::<Result<Vec<_>>>()?;
        BandwidthSearchSpec::from_candidates(axes)
    }

    /// Scale-aware default: per dimension, `DEFAULT_CANDIDATES` log-spaced
    /// candidates spanning `[0.05 s, 2 s]` where `s` is the standard
    /// deviation of the midpoint surrogates in that dimension.
    pub fn default_for(sample: &Sample, grid: &Grid) -> Result<Self> {
        Self::default_with_candidates(sample, grid, DEFAULT_CANDIDATES)
    }

    /// As [`BandwidthSearchSpec::default_for`] with an explicit candidate
    /// count per dimension.
    pub fn default_with_candidates(sample: &Sample, grid: &Grid, count: usize) -> Result<Self> {
        let mids = midpoints(sample, grid);
        let n = mids.len();
        let ranges: Vec<(f64, f64)> = (0..sample.dimension())
            .map(|m| {
                let mean: f64 = mids.iter().map(|v| v[m]).sum::<f64>() / n as f64;
                let var: f64 = mids.iter().map(|v| (v[m] - mean).powi(2)).sum::<f64>()
                    / (n.saturating_sub(1)).max(1) as f64;
                let mut sigma = var.sqrt();
                if sigma.is_nan() || sigma <= 0.0 {
                    let axis = grid.axis(m);
                    sigma = axis.last().unwrap() - axis[0];
                }
                if sigma.is_nan() || sigma <= 0.0 {
                    sigma = 1.0;
                }
                (0.05 * sigma, 2.0 * sigma)
            })
            .collect();
        BandwidthSearchSpec::log_spaced(&ranges, count)
    }

    pub fn with_scan_cap(mut self, cap: usize) -> Self {
        self.scan_cap = cap.max(1);
        self
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    fn combinations(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }
}

/// A bandwidth selection together with the scanned score table.
#[derive(Debug, Clone)]
pub struct BandwidthSelection {
    pub selected: Bandwidth,
    pub selected_score: ScoreEvaluation,
    /// Scores of the scanned candidates, in scan order.
    pub evaluations: Vec<ScoreEvaluation>,
}

/// Select the bandwidth minimizing the censored cross-validation score.
pub fn select_bandwidth(
    sample: &Sample,
    kernel: Kernel,
    search: &BandwidthSearchSpec,
) -> Result<Bandwidth> {
    Ok(select_bandwidth_detailed(sample, kernel, search)?.selected)
}

/// As [`select_bandwidth`], also returning the score table.
///
/// Candidates are scanned in lexicographic order with ties broken toward
/// the smaller bandwidth. Exhaustive scans are capped; larger spaces fall
/// back to coordinate descent over the candidate axes. A golden-section
/// refinement between the neighbors of the scan minimum follows (per
/// coordinate when multi-dimensional) and its result is kept only when it
/// strictly improves the score.
pub fn select_bandwidth_detailed(
    sample: &Sample,
    kernel: Kernel,
    search: &BandwidthSearchSpec,
) -> Result<BandwidthSelection> {
    if search.axes.len() != sample.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sample.dimension(),
            found: search.axes.len(),
        });
    }
    let ctx = ScoreContext::new(sample)?;
    let m = search.axes.len();

    // Indices into the candidate axes for the current best point.
    let mut best_idx: Vec<usize>;
    let mut evaluations: Vec<ScoreEvaluation>;

    if search.combinations() <= search.scan_cap {
        let combos: Vec<Vec<usize>> = index_product(&search.axes);
        let scored: Vec<ScoreEvaluation> = combos
            .par_iter()
            .map(|idx| {
                let h = Bandwidth::new(
                    idx.iter()
                        .zip(&search.axes)
                        .map(|(&i, axis)| axis[i])
                        .collect(),
                )?;
                ctx.evaluate(kernel, &h)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut best = 0usize;
        for (i, ev) in scored.iter().enumerate() {
            if ev.score < scored[best].score {
                best = i;
            }
        }
        best_idx = combos[best].clone();
        evaluations = scored;
    } else {
        // Coordinate descent over the candidate axes from the median point.
        best_idx = search.axes.iter().map(|a| a.len() / 2).collect();
        evaluations = Vec::new();
        let mut best_score = f64::INFINITY;
        for _ in 0..8 {
            let mut changed = false;
            for dim in 0..m {
                let scored: Vec<ScoreEvaluation> = (0..search.axes[dim].len())
                    .into_par_iter()
                    .map(|i| {
                        let mut idx = best_idx.clone();
                        idx[dim] = i;
                        let h = Bandwidth::new(
                            idx.iter()
                                .zip(&search.axes)
                                .map(|(&i, axis)| axis[i])
                                .collect(),
                        )?;
                        ctx.evaluate(kernel, &h)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut local = 0usize;
                for (i, ev) in scored.iter().enumerate() {
                    if ev.score < scored[local].score {
                        local = i;
                    }
                }
                if scored[local].score < best_score {
                    best_score = scored[local].score;
                    if best_idx[dim] != local {
                        best_idx[dim] = local;
                        changed = true;
                    }
                }
                evaluations.extend(scored);
            }
            if !changed {
                break;
            }
        }
    }

    let best_h: Vec<f64> = best_idx
        .iter()
        .zip(&search.axes)
        .map(|(&i, axis)| axis[i])
        .collect();
    let mut selected = ctx.evaluate(kernel, &Bandwidth::new(best_h.clone())?)?;

    // Golden-section refinement between the scan neighbors, kept only on
    // strict improvement.
    let mut current = best_h;
    for dim in 0..m {
        let axis = &search.axes[dim];
        let i = best_idx[dim];
        let lo = axis[i.saturating_sub(1)];
        let hi = axis[(i + 1).min(axis.len() - 1)];
        if hi <= lo {
            continue;
        }
        let eval_at = |h_dim: f64| -> f64 {
            let mut h = current.clone();
            h[dim] = h_dim;
            match Bandwidth::new(h).and_then(|b| ctx.evaluate(kernel, &b)) {
                Ok(ev) => ev.score,
                Err(_) => f64::INFINITY,
            }
        };
        let refined = golden_section_min(eval_at, lo, hi, (hi - lo) * 1e-8);
        let mut h = current.clone();
        h[dim] = refined;
        let candidate = ctx.evaluate(kernel, &Bandwidth::new(h.clone())?)?;
        if candidate.score < selected.score {
            current = h;
            selected = candidate;
        }
    }

    Ok(BandwidthSelection {
        selected: selected.bandwidth.clone(),
        selected_score: selected,
        evaluations,
    })
}

/// Lexicographic Cartesian product of index ranges over the axes.
fn index_product(axes: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    loop {
        out.push(idx.clone());
        let mut m = axes.len();
        loop {
            if m == 0 {
                return out;
            }
            m -= 1;
            idx[m] += 1;
            if idx[m] < axes[m].len() {
                break;
            }
            idx[m] = 0;
        }
    }
}
