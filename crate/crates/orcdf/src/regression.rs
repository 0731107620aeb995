//! Censored Nadaraya-Watson regression.
//!
//! The conditional mean is the ratio of two sums over the joint grid: the
//! cell weights times the covariate kernel, with and without the response
//! grid values as factors. The response-direction kernel integrates out,
//! so no response bandwidth exists.

use crate::censored::Sample;
use crate::error::{Error, Result};
use crate::estimator::estimate_cdf_grid;
use crate::kde::{weights_md_full_mass, Bandwidth, Kernel, WeightTable};

/// Threshold below which the denominator counts as underflowed.
const DENOMINATOR_FLOOR: f64 = 1e-300;

/// A fitted censored regression: joint weights over the (covariates,
/// response) grid plus the covariate kernel and bandwidth.
#[derive(Debug, Clone)]
pub struct RegressionModel {
    weights: WeightTable,
    kernel: Kernel,
    x_bandwidth: Bandwidth,
}

impl RegressionModel {
    /// Number of covariate dimensions (the response is the final axis).
    pub fn covariate_dim(&self) -> usize {
        self.weights.grid().dimension() - 1
    }

    /// Grid values of the response axis.
    pub fn response_axis(&self) -> &[f64] {
        self.weights.grid().axis(self.covariate_dim())
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn x_bandwidth(&self) -> &Bandwidth {
        &self.x_bandwidth
    }
}

/// Fit the censored regression on a sample whose last coordinate is the
/// response. The bandwidth covers the covariates only.
///
/// The joint weights keep boundary-cell mass (the zero-slice extension of
/// the inclusion-exclusion), so on exact data the model reduces to the
/// classical estimator; on all-censored data this matches the plain
/// multivariate weight rule exactly.
pub fn fit(sample: &Sample, kernel: Kernel, x_bandwidth: &Bandwidth) -> Result<RegressionModel> {
    if sample.dimension() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: sample.dimension(),
        });
    }
    if x_bandwidth.len() != sample.dimension() - 1 {
        return Err(Error::DimensionMismatch {
            expected: sample.dimension() - 1,
            found: x_bandwidth.len(),
        });
    }
    let cdf = estimate_cdf_grid(sample)?;
    Ok(RegressionModel {
        weights: weights_md_full_mass(&cdf),
        kernel,
        x_bandwidth: x_bandwidth.clone(),
    })
}

/// Predicted conditional mean of the response at covariates `x`.
///
/// Weighted average of the response grid values with weights
/// `w(cell) * K((x - x_cell) / h)`; the bandwidth normalizations cancel
/// in the ratio. A vanishing kernel mass at `x` is a signalled error
/// rather than a silent 0/0.
pub fn predict(model: &RegressionModel, x: &[f64]) -> Result<f64> {
    let mx = model.covariate_dim();
    if x.len() != mx {
        return Err(Error::DimensionMismatch {
            expected: mx,
            found: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinitePoint);
    }
    let h = model.x_bandwidth.components();
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for (coords, w) in model.weights.nonzero() {
        let mut k = w;
        for j in 0..mx {
            k *= model.kernel.evaluate((x[j] - coords[j]) / h[j]);
        }
        numerator += k * coords[mx];
        denominator += k;
    }
    if denominator < DENOMINATOR_FLOOR {
        return Err(Error::ZeroDenominator);
    }
    Ok(numerator / denominator)
}
