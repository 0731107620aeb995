//! Shared generators and reference formulas for the integration suites.

use rand::rngs::StdRng;
use rand::Rng;

use orcdf::{CensoredScalar, CensoredVector, Sample};

/// Random 1-dimensional censored sample. `infinite_share` is the chance a
/// given interval endpoint is pushed to infinity.
pub fn random_sample_1d(rng: &mut StdRng, n: usize, infinite_share: f64) -> Sample {
    let coords = (0..n).map(|_| random_scalar(rng, infinite_share)).collect();
    Sample::univariate(coords).unwrap()
}

/// Random M-dimensional censored sample with finite endpoints.
pub fn random_sample_md(rng: &mut StdRng, n: usize, dims: usize) -> Sample {
    let obs = (0..n)
        .map(|_| CensoredVector::new((0..dims).map(|_| random_scalar(rng, 0.0)).collect()).unwrap())
        .collect();
    Sample::new(obs).unwrap()
}

pub fn random_scalar(rng: &mut StdRng, infinite_share: f64) -> CensoredScalar {
    if rng.random_bool(0.3) {
        CensoredScalar::exact(rng.random_range(-3.0..3.0)).unwrap()
    } else {
        let lower = rng.random_range(-3.0..2.5);
        let width = rng.random_range(0.05..2.0);
        let mut lo = lower;
        let mut hi = lower + width;
        if rng.random_bool(infinite_share) {
            lo = f64::NEG_INFINITY;
        }
        if rng.random_bool(infinite_share) {
            hi = f64::INFINITY;
        }
        if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
            hi = lower + width;
        }
        CensoredScalar::interval(lo, hi).unwrap()
    }
}

/// Random exact-valued sample (no censoring).
pub fn random_exact_sample(rng: &mut StdRng, n: usize) -> (Sample, Vec<f64>) {
    let values: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    (Sample::from_exact(&values).unwrap(), values)
}

/// Standard normal distribution function, small rational approximation;
/// absolute error below 1e-7, plenty for sup-distance checks.
pub fn normal_cdf(x: f64) -> f64 {
    let t = 1.0 / (1.0 + 0.2316419 * x.abs());
    let poly = t
        * (0.319381530
            + t * (-0.356563782 + t * (1.781477937 + t * (-1.821255978 + t * 1.330274429))));
    let tail = orcdf::numeric::normal_pdf(x.abs()) * poly;
    if x >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}
