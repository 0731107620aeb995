//! Grid-cell weights derived from a fitted distribution function and the
//! smoothed kernel density estimator built on them.
//!
//! Weights are the probability mass the fitted distribution assigns to
//! grid-cell hyperrectangles. In one dimension the first grid point
//! carries the full mass below it; in two or more dimensions any index on
//! the first slice of an axis carries zero, and interior cells take the
//! alternating-sign inclusion-exclusion of the distribution values at the
//! 2^M surrounding corners. The two boundary conventions intentionally
//! differ per dimensionality.

use crate::array::GridArray;
use crate::censored::Grid;
use crate::error::{Error, Result};
use crate::estimator::CdfEstimate;
use crate::numeric::normal_pdf;

/// Smoothing kernel, a symmetric density on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Gaussian,
    /// `0.75 (1 - t^2)` on `[-1, 1]`.
    Epanechnikov,
    /// Unit box on `[-1/2, 1/2]`.
    Uniform,
}

impl Kernel {
    #[inline]
    pub fn evaluate(self, t: f64) -> f64 {
        match self {
            Kernel::Gaussian => normal_pdf(t),
            Kernel::Epanechnikov => {
                if t.abs() <= 1.0 {
                    0.75 * (1.0 - t * t)
                } else {
                    0.0
                }
            }
            Kernel::Uniform => {
                if t.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Per-dimension smoothing bandwidths, all strictly positive and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Bandwidth(Vec<f64>);

impl Bandwidth {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|&h| !h.is_finite() || h <= 0.0) {
            return Err(Error::InvalidBandwidth);
        }
        Ok(Bandwidth(components))
    }

    /// One-dimensional bandwidth.
    pub fn scalar(h: f64) -> Result<Self> {
        Bandwidth::new(vec![h])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Probability mass per grid cell, ready for kernel smoothing.
#[derive(Debug, Clone)]
pub struct WeightTable {
    grid: Grid,
    weights: GridArray,
    clamped: bool,
    clamped_mass: f64,
    // Cached nonzero entries: coordinates flattened row-major, then masses.
    nz_coords: Vec<f64>,
    nz_weights: Vec<f64>,
}

impl WeightTable {
    fn build(grid: Grid, weights: GridArray, clamped: bool, clamped_mass: f64) -> Self {
        let dim = grid.dimension();
        let mut nz_coords = Vec::new();
        let mut nz_weights = Vec::new();
        let mut idx = vec![0usize; dim];
        let mut point = vec![0.0; dim];
        for flat in 0..weights.len() {
            let w = weights.get_flat(flat);
            if w != 0.0 {
                weights.decode(flat, &mut idx);
                grid.write_point(&idx, &mut point);
                nz_coords.extend_from_slice(&point);
                nz_weights.push(w);
            }
        }
        WeightTable {
            grid,
            weights,
            clamped,
            clamped_mass,
            nz_coords,
            nz_weights,
        }
    }

    /// Wrap explicit non-negative weights over a grid. Total mass may not
    /// exceed 1 beyond rounding.
    pub fn from_weights(grid: Grid, weights: GridArray) -> Result<Self> {
        if weights.shape() != grid.shape().as_slice() {
            return Err(Error::ShapeMismatch {
                expected: grid.shape(),
                found: weights.shape().to_vec(),
            });
        }
        let sum: f64 = weights.as_slice().iter().sum();
        if weights.as_slice().iter().any(|&w| w.is_nan() || w < 0.0) || sum > 1.0 + 1e-9 {
            return Err(Error::InvalidWeights);
        }
        Ok(WeightTable::build(grid, weights, false, 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn weights(&self) -> &GridArray {
        &self.weights
    }

    /// Whether any negative raw inclusion-exclusion mass was clamped to zero.
    pub fn clamped(&self) -> bool {
        self.clamped
    }

    /// Total negative mass removed by clamping.
    pub fn clamped_mass(&self) -> f64 {
        self.clamped_mass
    }

    /// Sum of the (clamped) weights.
    pub fn total_mass(&self) -> f64 {
        self.weights.as_slice().iter().sum()
    }

    /// Nonzero entries as (grid point coordinates, mass), in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nz_coords
            .chunks_exact(self.grid.dimension().max(1))
            .zip(self.nz_weights.iter().copied())
    }
}

/// One-dimensional weights: first point carries the fitted value there,
/// later points the successive differences.
pub fn weights_1d(cdf: &CdfEstimate) -> Result<WeightTable> {
    if cdf.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: cdf.dimension(),
        });
    }
    Ok(weights_1d_inner(cdf))
}

fn weights_1d_inner(cdf: &CdfEstimate) -> WeightTable {
    let v = cdf.values().as_slice();
    let mut w = Vec::with_capacity(v.len());
    w.push(v[0]);
    for i in 1..v.len() {
        // Non-negative: one-dimensional estimates are monotone.
        w.push(v[i] - v[i - 1]);
    }
    let weights = GridArray::from_vec(&[v.len()], w).unwrap();
    WeightTable::build(cdf.grid().clone(), weights, false, 0.0)
}

/// Two-dimensional weights by the rectangle recursion; first row and
/// first column are zero, negative raw cells are clamped.
pub fn weights_2d(cdf: &CdfEstimate) -> Result<WeightTable> {
    if cdf.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cdf.dimension(),
        });
    }
    let f = cdf.values();
    let shape = f.shape().to_vec();
    let mut w = GridArray::zeros(&shape);
    let mut clamped = false;
    let mut clamped_mass = 0.0;
    for i in 1..shape[0] {
        for j in 1..shape[1] {
            let raw =
                f.get(&[i, j]) - f.get(&[i, j - 1]) - f.get(&[i - 1, j]) + f.get(&[i - 1, j - 1]);
            if raw < 0.0 {
                clamped = true;
                clamped_mass -= raw;
                w.set(&[i, j], 0.0);
            } else {
                w.set(&[i, j], raw);
            }
        }
    }
    Ok(WeightTable::build(
        cdf.grid().clone(),
        w,
        clamped,
        clamped_mass,
    ))
}

/// Weights in any dimension.
///
/// Specializes exactly to [`weights_1d`] for one axis (including its
/// boundary rule) and to [`weights_2d`] for two. For M >= 2 the interior
/// cell at a multi-index takes the alternating-sign sum of the fitted
/// values at the 2^M corners offset by 0 or 1 per axis.
pub fn weights_md(cdf: &CdfEstimate) -> WeightTable {
    if cdf.dimension() == 1 {
        return weights_1d_inner(cdf);
    }
    let f = cdf.values();
    let shape = f.shape().to_vec();
    let m = shape.len();
    let mut w = GridArray::zeros(&shape);
    let mut clamped = false;
    let mut clamped_mass = 0.0;
    let mut corner = vec![0usize; m];
    let mut idx = vec![0usize; m];
    for flat in 0..f.len() {
        f.decode(flat, &mut idx);
        if idx.contains(&0) {
            continue;
        }
        // Mask bit k toggles axis m-1-k so the terms accumulate in the
        // same order as the two-dimensional recursion formula.
        let mut raw = 0.0;
        for mask in 0..(1u32 << m) {
            for (j, c) in corner.iter_mut().enumerate() {
                *c = idx[j] - ((mask >> (m - 1 - j)) & 1) as usize;
            }
            let term = f.get(&corner);
            if mask.count_ones() % 2 == 0 {
                raw += term;
            } else {
                raw -= term;
            }
        }
        if raw < 0.0 {
            clamped = true;
            clamped_mass -= raw;
        } else {
            w.set_flat(flat, raw);
        }
    }
    WeightTable::build(cdf.grid().clone(), w, clamped, clamped_mass)
}

/// Weights by inclusion-exclusion extended with a zero slice below the
/// grid in every dimension, so boundary cells keep their mass and the
/// total always equals the fitted value at the maximal corner.
///
/// On all-censored samples with finite endpoints this agrees exactly with
/// [`weights_md`], whose boundary cells are provably zero there. The two
/// differ for exact or one-sided observations whose mass reaches the
/// first grid slice; regression fitting relies on that mass being kept.
pub fn weights_md_full_mass(cdf: &CdfEstimate) -> WeightTable {
    if cdf.dimension() == 1 {
        return weights_1d_inner(cdf);
    }
    let f = cdf.values();
    let shape = f.shape().to_vec();
    let m = shape.len();
    let mut w = GridArray::zeros(&shape);
    let mut clamped = false;
    let mut clamped_mass = 0.0;
    let mut corner = vec![0usize; m];
    let mut idx = vec![0usize; m];
    for flat in 0..f.len() {
        f.decode(flat, &mut idx);
        let mut raw = 0.0;
        'mask: for mask in 0..(1u32 << m) {
            for (j, c) in corner.iter_mut().enumerate() {
                let offset = ((mask >> (m - 1 - j)) & 1) as usize;
                if idx[j] < offset {
                    // Term falls below the grid where the fitted mass is zero.
                    continue 'mask;
                }
                *c = idx[j] - offset;
            }
            let term = f.get(&corner);
            if mask.count_ones() % 2 == 0 {
                raw += term;
            } else {
                raw -= term;
            }
        }
        if raw < 0.0 {
            clamped = true;
            clamped_mass -= raw;
        } else {
            w.set_flat(flat, raw);
        }
    }
    WeightTable::build(cdf.grid().clone(), w, clamped, clamped_mass)
}

/// The smoothed density at a point: the weighted sum of product kernels
/// centered at the grid points, scaled by the bandwidth product.
pub fn density_at(
    table: &WeightTable,
    kernel: Kernel,
    bandwidth: &Bandwidth,
    point: &[f64],
) -> Result<f64> {
    let m = table.grid().dimension();
    if bandwidth.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bandwidth.len(),
        });
    }
    if point.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: point.len(),
        });
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinitePoint);
    }
    let h = bandwidth.components();
    let mut sum = 0.0;
    for (coords, w) in table.nonzero() {
        let mut term = w;
        for j in 0..m {
            term *= kernel.evaluate((point[j] - coords[j]) / h[j]);
        }
        sum += term;
    }
    let inv_h: f64 = h.iter().map(|&hj| 1.0 / hj).product();
    Ok(inv_h * sum)
}
