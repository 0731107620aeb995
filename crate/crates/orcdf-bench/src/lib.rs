//! Deterministic synthetic inputs for the benchmarks.

use orcdf::{CensoredScalar, CensoredVector, Sample};

/// Low-discrepancy value in (0, 1) from the Weyl sequence.
fn weyl(i: usize) -> f64 {
    (i as f64 * 0.618_033_988_749_894_9).fract()
}

/// A reproducible 1-dimensional censored sample mixing exact values,
/// finite intervals, and one-sided intervals.
pub fn synthetic_sample_1d(n: usize) -> Sample {
    let coords = (0..n)
        .map(|i| {
            let center = 6.0 * weyl(3 * i + 1) - 3.0;
            match i % 5 {
                0 => CensoredScalar::exact(center).unwrap(),
                4 if i % 10 == 4 => CensoredScalar::interval(f64::NEG_INFINITY, center).unwrap(),
                _ => {
                    let width = 0.2 + 1.5 * weyl(3 * i + 2);
                    CensoredScalar::interval(center, center + width).unwrap()
                }
            }
        })
        .collect();
    Sample::univariate(coords).unwrap()
}

/// A reproducible 2-dimensional all-censored sample.
pub fn synthetic_sample_2d(n: usize) -> Sample {
    let obs = (0..n)
        .map(|i| {
            let scalar = |j: usize| {
                let lo = 6.0 * weyl(7 * i + j) - 3.0;
                let width = 0.2 + 1.5 * weyl(7 * i + j + 3);
                CensoredScalar::interval(lo, lo + width).unwrap()
            };
            CensoredVector::new(vec![scalar(1), scalar(2)]).unwrap()
        })
        .collect();
    Sample::new(obs).unwrap()
}
