//! Property tests for the structural invariants.

use proptest::prelude::*;

use orcdf::{
    build_grid, closed_form_fhat, count_at, estimate_cdf_grid, fit, predict, weights_1d,
    weights_md, Bandwidth, CensoredScalar, CensoredVector, CountTriple, Kernel, Sample,
};

fn scalar_strategy() -> impl Strategy<Value = CensoredScalar> {
    prop_oneof![
        (-50.0f64..50.0).prop_map(|v| CensoredScalar::exact(v).unwrap()),
        ((-50.0f64..50.0), (0.01f64..20.0))
            .prop_map(|(lo, width)| { CensoredScalar::interval(lo, lo + width).unwrap() }),
        (-50.0f64..50.0).prop_map(|hi| CensoredScalar::interval(f64::NEG_INFINITY, hi).unwrap()),
        (-50.0f64..50.0).prop_map(|lo| CensoredScalar::interval(lo, f64::INFINITY).unwrap()),
    ]
}

fn sample_1d(max_n: usize) -> impl Strategy<Value = Sample> {
    prop::collection::vec(scalar_strategy(), 1..=max_n)
        .prop_map(|coords| Sample::univariate(coords).unwrap())
}

fn sample_2d(max_n: usize) -> impl Strategy<Value = Sample> {
    prop::collection::vec((scalar_strategy(), scalar_strategy()), 1..=max_n).prop_map(|pairs| {
        let obs = pairs
            .into_iter()
            .map(|(a, b)| CensoredVector::new(vec![a, b]).unwrap())
            .collect();
        Sample::new(obs).unwrap()
    })
}

proptest! {
    #[test]
    fn counts_partition_the_sample(sample in sample_1d(40), tau in -60.0f64..60.0) {
        let c = count_at(&sample, &[tau]).unwrap();
        prop_assert_eq!(c.total(), sample.len());
    }

    #[test]
    fn counts_partition_in_two_dimensions(
        sample in sample_2d(25),
        x in -60.0f64..60.0,
        y in -60.0f64..60.0,
    ) {
        let c = count_at(&sample, &[x, y]).unwrap();
        prop_assert_eq!(c.total(), sample.len());
    }

    #[test]
    fn counts_are_permutation_invariant(
        sample in sample_1d(20),
        tau in -60.0f64..60.0,
        seed in 0u64..1000,
    ) {
        let mut observations = sample.observations().to_vec();
        // Cheap deterministic shuffle.
        let n = observations.len();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            observations.swap(i, j);
        }
        let shuffled = Sample::new(observations).unwrap();
        prop_assert_eq!(
            count_at(&sample, &[tau]).unwrap(),
            count_at(&shuffled, &[tau]).unwrap()
        );
    }

    #[test]
    fn counts_monotone_along_the_grid(sample in sample_1d(30)) {
        if let Ok(grid) = build_grid(&sample) {
            let mut last_d = 0usize;
            let mut last_du = 0usize;
            for &tau in grid.axis(0) {
                let c = count_at(&sample, &[tau]).unwrap();
                prop_assert!(c.d >= last_d);
                prop_assert!(c.d + c.u >= last_du);
                last_d = c.d;
                last_du = c.d + c.u;
            }
        }
    }

    #[test]
    fn closed_form_bounded_and_symmetric(d in 0usize..60, u in 0usize..60, a in 0usize..60) {
        prop_assume!(d + u + a >= 1);
        let v = closed_form_fhat(CountTriple::new(d, u, a));
        prop_assert!((0.0..=1.0).contains(&v));
        let mirrored = closed_form_fhat(CountTriple::new(a, u, d));
        prop_assert!((v + mirrored - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn estimates_are_bounded_and_monotone_1d(sample in sample_1d(30)) {
        if let Ok(est) = estimate_cdf_grid(&sample) {
            let values = est.values().as_slice();
            prop_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
            prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
            let table = weights_1d(&est).unwrap();
            prop_assert!(table.weights().as_slice().iter().all(|&w| w >= 0.0));
            prop_assert!(table.total_mass() <= 1.0 + 1e-9);
            prop_assert!(!table.clamped());
        }
    }

    #[test]
    fn raw_weight_mass_is_bounded_on_censored_2d(
        intervals in prop::collection::vec(
            ((-50.0f64..50.0), (0.01f64..20.0), (-50.0f64..50.0), (0.01f64..20.0)),
            1..=15
        ),
    ) {
        // Fully censored finite samples: the boundary slices of the fitted
        // distribution vanish, so the raw cell masses telescope to the
        // value at the maximal corner and cannot exceed 1. Clamping can
        // push the stored total above 1 by exactly the clamped mass, which
        // stays queryable rather than being renormalized away.
        let obs: Vec<CensoredVector> = intervals
            .iter()
            .map(|&(xl, xw, yl, yw)| {
                CensoredVector::new(vec![
                    CensoredScalar::interval(xl, xl + xw).unwrap(),
                    CensoredScalar::interval(yl, yl + yw).unwrap(),
                ])
                .unwrap()
            })
            .collect();
        let sample = Sample::new(obs).unwrap();
        let est = estimate_cdf_grid(&sample).unwrap();
        let table = weights_md(&est);
        prop_assert!(table.weights().as_slice().iter().all(|&w| w >= 0.0));
        let raw_total = table.total_mass() - table.clamped_mass();
        prop_assert!(
            raw_total <= 1.0 + 1e-9,
            "raw mass {} with clamped {}",
            raw_total,
            table.clamped_mass()
        );
        if !table.clamped() {
            prop_assert!(table.total_mass() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn weight_table_bookkeeping_is_consistent_2d(sample in sample_2d(15)) {
        // Mixed exact and one-sided observations can make the raw
        // inclusion-exclusion masses negative in bulk; the clamped table
        // still accounts for them exactly: the raw total telescopes to the
        // alternating corner sum of the fitted values.
        if let Ok(est) = estimate_cdf_grid(&sample) {
            let table = weights_md(&est);
            prop_assert!(table.weights().as_slice().iter().all(|&w| w >= 0.0));
            let raw_total = table.total_mass() - table.clamped_mass();
            let v = est.values();
            let shape = v.shape();
            let mut corner_sum = 0.0;
            for mask in 0..4u32 {
                let idx = [
                    if mask & 2 == 0 { shape[0] - 1 } else { 0 },
                    if mask & 1 == 0 { shape[1] - 1 } else { 0 },
                ];
                let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                corner_sum += sign * v.get(&idx);
            }
            prop_assert!(
                (raw_total - corner_sum).abs() <= 1e-9,
                "raw {} vs corners {}",
                raw_total,
                corner_sum
            );
        }
    }

    #[test]
    fn predictions_average_the_response_grid(
        pairs in prop::collection::vec(
            ((-5.0f64..5.0), (0.01f64..3.0), (-5.0f64..5.0), (0.01f64..3.0)),
            2..=10
        ),
        x in -6.0f64..6.0,
    ) {
        let obs: Vec<CensoredVector> = pairs
            .iter()
            .map(|&(xl, xw, yl, yw)| {
                CensoredVector::new(vec![
                    CensoredScalar::interval(xl, xl + xw).unwrap(),
                    CensoredScalar::interval(yl, yl + yw).unwrap(),
                ])
                .unwrap()
            })
            .collect();
        let sample = Sample::new(obs).unwrap();
        let model = fit(&sample, Kernel::Gaussian, &Bandwidth::scalar(1.0).unwrap()).unwrap();
        let value = predict(&model, &[x]).unwrap();
        let m = model.covariate_dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (coords, w) in model.weights().nonzero() {
            if w > 0.0 {
                lo = lo.min(coords[m]);
                hi = hi.max(coords[m]);
            }
        }
        prop_assert!(value >= lo - 1e-9 && value <= hi + 1e-9);
    }
}
