//! Observed-range maximum likelihood estimation for interval-censored data.
//!
//! At any evaluation point, censoring leaves the number of observations at
//! or below the point known only up to a range; the estimators here
//! maximize the likelihood of that observed range. On top of the closed
//! form the crate builds nonparametric CDF estimation in one and M
//! dimensions, a derived kernel density estimator with cross-validated
//! bandwidth selection, a censored Nadaraya-Watson regression, and
//! censored multinomial and 2x2 contingency-table inference.
//!
//! Everything is deterministic: parallel grid evaluation partitions work
//! but reduces in a fixed order, and the seeded searches use an explicit
//! generator.
//!
//! ```
//! use orcdf::{
//!     density_at, estimate_cdf_grid, weights_1d, Bandwidth, CensoredScalar, Kernel, Sample,
//! };
//!
//! let sample = Sample::univariate(vec![
//!     CensoredScalar::interval(0.0, 2.0)?,
//!     CensoredScalar::exact(1.0)?,
//!     CensoredScalar::interval(1.0, f64::INFINITY)?,
//! ])?;
//! let cdf = estimate_cdf_grid(&sample)?;
//! let weights = weights_1d(&cdf)?;
//! let density = density_at(&weights, Kernel::Gaussian, &Bandwidth::scalar(0.5)?, &[1.2])?;
//! assert!(density > 0.0);
//! # Ok::<(), orcdf::Error>(())
//! ```

pub mod array;
pub mod bandwidth;
pub mod censored;
pub mod contingency;
pub mod error;
pub mod estimator;
pub mod kde;
pub mod multinomial;
pub mod numeric;
pub mod quadrature;
pub mod regression;

pub use crate::array::GridArray;
pub use crate::bandwidth::{
    integral_fhat_squared, loo_density, midpoints, score_m0_tilde, select_bandwidth,
    select_bandwidth_detailed, BandwidthSearchSpec, BandwidthSelection, Midpoints, ScoreContext,
    ScoreEvaluation,
};
pub use crate::censored::{
    build_grid, count_at, CensoredScalar, CensoredVector, CountTriple, Grid, Sample,
};
pub use crate::contingency::{
    estimate_alpha, fit_example1, fit_example2, fit_example3, null_log_likelihood,
    table_probability, ExampleKind, Table2x2, TableEstimates,
};
pub use crate::error::{Error, Result};
pub use crate::estimator::{
    closed_form_fhat, estimate_cdf_at, estimate_cdf_grid, estimate_cdf_grid_capped,
    estimate_cdf_on_grid, estimate_censoring_mechanism, likelihood_oracle, CdfEstimate,
    CensoringTriple, DEFAULT_MAX_GRID_POINTS,
};
pub use crate::kde::{
    density_at, weights_1d, weights_2d, weights_md, weights_md_full_mass, Bandwidth, Kernel,
    WeightTable,
};
pub use crate::multinomial::{
    binomial_censored_mle, exact_multinomial_likelihood, exact_multinomial_mle, known_q_mle,
    multinomial_normalized_estimate, partial_known_q_mle, DiscreteCensoredCounts, EstimateMethod,
    ObservationProbabilities, PartialKnownQFit, SimplexEstimate,
};
pub use crate::regression::{fit, predict, RegressionModel};
