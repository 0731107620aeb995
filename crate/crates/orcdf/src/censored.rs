//! Censored samples, evaluation grids, and the per-point count triple
//! that every estimator consumes.

use crate::error::{Error, Result};

/// A single coordinate of an observation: exact, or censored into `(lower, upper]`.
///
/// `lower` may be negative infinity and `upper` positive infinity for
/// one-sided censoring. Exact values are a distinct variant because the
/// counting rules for an exact value differ from those for a degenerate
/// interval, which would be empty under the half-open convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CensoredScalar {
    Exact(f64),
    Interval { lower: f64, upper: f64 },
}

impl CensoredScalar {
    /// Exact observation; the value must be finite.
    pub fn exact(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFiniteExact(value));
        }
        Ok(CensoredScalar::Exact(value))
    }

    /// Censoring interval `(lower, upper]` with `lower < upper`.
    /// Infinite endpoints are allowed; NaN is not.
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower >= upper {
            return Err(Error::InvalidInterval { lower, upper });
        }
        Ok(CensoredScalar::Interval { lower, upper })
    }

    /// Lower endpoint; an exact value acts as its own endpoint.
    #[inline]
    pub fn lower(&self) -> f64 {
        match *self {
            CensoredScalar::Exact(v) => v,
            CensoredScalar::Interval { lower, .. } => lower,
        }
    }

    /// Upper endpoint; an exact value acts as its own endpoint.
    #[inline]
    pub fn upper(&self) -> f64 {
        match *self {
            CensoredScalar::Exact(v) => v,
            CensoredScalar::Interval { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CensoredScalar::Exact(_))
    }
}

/// One M-variate observation.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredVector {
    coords: Vec<CensoredScalar>,
}

impl CensoredVector {
    pub fn new(coords: Vec<CensoredScalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(CensoredVector { coords })
    }

    pub fn scalar(coord: CensoredScalar) -> Self {
        CensoredVector {
            coords: vec![coord],
        }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CensoredScalar] {
        &self.coords
    }
}

/// An i.i.d. sample of censored M-vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    observations: Vec<CensoredVector>,
    dimension: usize,
}

impl Sample {
    pub fn new(observations: Vec<CensoredVector>) -> Result<Self> {
        let Some(first) = observations.first() else {
            return Err(Error::EmptySample);
        };
        let dimension = first.dimension();
        for obs in &observations {
            if obs.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: obs.dimension(),
                });
            }
        }
        Ok(Sample {
            observations,
            dimension,
        })
    }

    /// One-dimensional sample from a list of scalars.
    pub fn univariate(coords: Vec<CensoredScalar>) -> Result<Self> {
        Sample::new(coords.into_iter().map(CensoredVector::scalar).collect())
    }

    /// One-dimensional sample of exact values.
    pub fn from_exact(values: &[f64]) -> Result<Self> {
        let coords = values
            .iter()
            .map(|&v| CensoredScalar::exact(v))
            .collect::<Result<Vec<_>>>()?;
        Sample::univariate(coords)
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn observations(&self) -> &[CensoredVector] {
        &self.observations
    }

    /// The sample with observation `n` removed.
    pub fn leave_one_out(&self, n: usize) -> Result<Sample> {
        if n >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                n: self.len(),
            });
        }
        if self.len() < 2 {
            return Err(Error::SampleTooSmall {
                n: self.len(),
                required: 2,
            });
        }
        let mut observations = self.observations.clone();
        observations.remove(n);
        Ok(Sample {
            observations,
            dimension: self.dimension,
        })
    }
}

/// Per-dimension sorted unique finite endpoint values and their Cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Vec<f64>>,
}

impl Grid {
    /// Build a grid from explicit axes; each must be finite and strictly increasing.
    pub fn new(axes: Vec<Vec<f64>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidAxis);
        }
        for axis in &axes {
            if axis.is_empty() || axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidAxis);
            }
            for w in axis.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidAxis);
                }
            }
        }
        Ok(Grid { axes })
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn axis(&self, m: usize) -> &[f64] {
        &self.axes[m]
    }

    /// Shape of the full Cartesian product.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    /// Number of grid points, without overflowing.
    pub fn num_points(&self) -> u128 {
        self.axes.iter().map(|a| a.len() as u128).product()
    }

    /// Coordinates of the grid point at a multi-index.
    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis[i])
            .collect()
    }

    /// Write the coordinates of a multi-index into `out`.
    #[inline]
    pub fn write_point(&self, idx: &[usize], out: &mut [f64]) {
        for (m, (&i, axis)) in idx.iter().zip(&self.axes).enumerate() {
            out[m] = axis[i];
        }
    }
}

/// The counts at an evaluation point: `d` observations certainly at or
/// below, `u` with censoring hyperrectangles strictly straddling the
/// point, and `a` the remainder, `d + u + a = N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountTriple {
    pub d: usize,
    pub u: usize,
    pub a: usize,
}

impl CountTriple {
    pub fn new(d: usize, u: usize, a: usize) -> Self {
        CountTriple { d, u, a }
    }

    pub fn total(&self) -> usize {
        self.d + self.u + self.a
    }
}

/// Per-dimension sorted unique finite endpoints of the sample.
///
/// Infinite endpoints never enter an axis; a coordinate whose every
/// observation is `(-inf, +inf)` has no finite endpoint at all and
/// produces `AxisEmpty`.
pub fn build_grid(sample: &Sample) -> Result<Grid> {
    let mut axes = Vec::with_capacity(sample.dimension());
    for m in 0..sample.dimension() {
        let mut values: Vec<f64> = Vec::with_capacity(2 * sample.len());
        for obs in sample.observations() {
            match obs.coords()[m] {
                CensoredScalar::Exact(v) => values.push(v),
                CensoredScalar::Interval { lower, upper } => {
                    if lower.is_finite() {
                        values.push(lower);
                    }
                    if upper.is_finite() {
                        values.push(upper);
                    }
                }
            }
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        if values.is_empty() {
            return Err(Error::AxisEmpty { dimension: m });
        }
        axes.push(values);
    }
    Grid::new(axes)
}

/// Count the sample against an evaluation point.
///
/// `d` counts observations with upper endpoints at or below the point in
/// every coordinate, `u` those whose interval strictly straddles the
/// point in every coordinate, and `a` is the remainder (not the count of
/// observations certainly above). An exact coordinate acts as the
/// degenerate endpoint pair, so it can satisfy the `d` predicate but
/// never the `u` predicate.
pub fn count_at(sample: &Sample, point: &[f64]) -> Result<CountTriple> {
    if point.len() != sample.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sample.dimension(),
            found: point.len(),
        });
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinitePoint);
    }
    let mut d = 0usize;
    let mut u = 0usize;
    for obs in sample.observations() {
        let mut below = true;
        let mut straddles = true;
        for (coord, &x) in obs.coords().iter().zip(point) {
            let lower = coord.lower();
            let upper = coord.upper();
            if upper > x {
                below = false;
            }
            if lower >= x || x >= upper {
                straddles = false;
            }
            if !below && !straddles {
                break;
            }
        }
        if below {
            d += 1;
        } else if straddles {
            u += 1;
        }
    }
    Ok(CountTriple {
        d,
        u,
        a: sample.len() - d - u,
    })
}
