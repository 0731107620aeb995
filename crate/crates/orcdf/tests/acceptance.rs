//! End-to-end acceptance suite. Each test prints one summary line with the
//! measured statistic against its tolerance.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use common::{normal_cdf, random_exact_sample, random_sample_1d, random_sample_md};
use orcdf::numeric::normal_pdf;
use orcdf::{
    build_grid, closed_form_fhat, count_at, density_at, estimate_cdf_grid, fit, known_q_mle,
    likelihood_oracle, midpoints, multinomial_normalized_estimate, predict, quadrature,
    score_m0_tilde, weights_1d, weights_2d, weights_md, Bandwidth, CdfEstimate, CensoredScalar,
    CountTriple, DiscreteCensoredCounts, ExampleKind, Grid, GridArray, Kernel,
    ObservationProbabilities, Sample, Table2x2, WeightTable,
};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[test]
fn acceptance_01_closed_form_matches_brute_force_oracle() {
    let mut cases = Vec::new();
    for n in 1..=25usize {
        for d in 0..=n {
            for u in 0..=n - d {
                cases.push(CountTriple::new(d, u, n - d - u));
            }
        }
    }
    let max_delta = cases
        .par_iter()
        .map(|&c| (closed_form_fhat(c) - likelihood_oracle(c, 10_000)).abs())
        .reduce(|| 0.0, f64::max);
    println!(
        "acceptance 01 closed form vs oracle over {} triples: max |delta| = {max_delta:.2e} (tol 1e-5)",
        cases.len()
    );
    assert!(max_delta <= 1e-5);
}

#[test]
fn acceptance_02_exact_data_reduces_to_empirical_cdf() {
    let mut rng = StdRng::seed_from_u64(2);
    for trial in 0..100 {
        let n = rng.random_range(1..=50);
        let (sample, values) = random_exact_sample(&mut rng, n);
        let est = estimate_cdf_grid(&sample).unwrap();
        for (i, &g) in est.grid().axis(0).iter().enumerate() {
            let empirical = values.iter().filter(|&&v| v <= g).count() as f64 / n as f64;
            assert_eq!(est.value_at(&[i]), empirical, "trial {trial}, g={g}");
        }
    }
    println!("acceptance 02 empirical-cdf reduction: 100 samples exact match");
}

#[test]
fn acceptance_03_one_dimensional_estimates_are_monotone() {
    let mut rng = StdRng::seed_from_u64(3);
    for trial in 0..200 {
        let n = rng.random_range(1..=40);
        let sample = random_sample_1d(&mut rng, n, 0.15);
        let est = match estimate_cdf_grid(&sample) {
            Ok(est) => est,
            // Every observation unbounded in both directions: no grid.
            Err(_) => continue,
        };
        let v = est.values().as_slice();
        for w in v.windows(2) {
            assert!(w[1] >= w[0], "trial {trial}: {} > {}", w[0], w[1]);
        }
    }
    println!("acceptance 03 monotonicity: 200 censored samples, no violations");
}

#[test]
fn acceptance_04_weights_2d_match_pseudocode_transcription() {
    let mut rng = StdRng::seed_from_u64(4);
    for trial in 0..100 {
        let ni = rng.random_range(2..=6);
        let nj = rng.random_range(2..=6);
        let values = GridArray::from_fn(&[ni, nj], |_| rng.random_range(0.0..1.0));
        let grid = Grid::new(vec![
            (0..ni).map(|i| i as f64).collect(),
            (0..nj).map(|j| j as f64).collect(),
        ])
        .unwrap();
        let cdf = CdfEstimate::new(grid, values.clone()).unwrap();
        let table = weights_2d(&cdf).unwrap();

        // Independent transcription of the row/column recursion: zero the
        // first row and column, then sweep the interior.
        let mut expected = GridArray::zeros(&[ni, nj]);
        for j in 0..nj {
            expected.set(&[0, j], 0.0);
        }
        for i in 0..ni {
            expected.set(&[i, 0], 0.0);
        }
        for j in 1..nj {
            for i in 1..ni {
                let w = values.get(&[i, j]) - values.get(&[i, j - 1]) - values.get(&[i - 1, j])
                    + values.get(&[i - 1, j - 1]);
                expected.set(&[i, j], if w < 0.0 { 0.0 } else { w });
            }
        }
        assert_eq!(
            table.weights().as_slice(),
            expected.as_slice(),
            "trial {trial}"
        );

        // And the generic inclusion-exclusion agrees exactly.
        let generic = weights_md(&cdf);
        assert_eq!(table.weights().as_slice(), generic.weights().as_slice());
    }
    println!("acceptance 04 pseudocode fidelity: 100 random 2d arrays, exact agreement");
}

#[test]
fn acceptance_05_density_mass_equals_weight_total() {
    let cases: Vec<(u64, bool)> = (0..25)
        .map(|i| (100 + i, false))
        .chain((0..25).map(|i| (200 + i, true)))
        .collect();
    let worst = cases
        .par_iter()
        .map(|&(seed, two_d)| {
            let mut rng = StdRng::seed_from_u64(seed);
            let sample = if two_d {
                let n = rng.random_range(3..=8);
                random_sample_md(&mut rng, n, 2)
            } else {
                let n = rng.random_range(3..=15);
                random_sample_1d(&mut rng, n, 0.0)
            };
            let cdf = estimate_cdf_grid(&sample).unwrap();
            let table = weights_md(&cdf);
            let mass = table.total_mass();
            let mut worst: f64 = 0.0;
            for scale in [0.3, 0.8, 2.0] {
                let dims = sample.dimension();
                let spans: Vec<f64> = (0..dims)
                    .map(|m| {
                        let axis = table.grid().axis(m);
                        (axis.last().unwrap() - axis[0]).max(0.5)
                    })
                    .collect();
                let h = Bandwidth::new(spans.iter().map(|s| scale * s / 4.0).collect()).unwrap();
                let hs = h.components().to_vec();
                let (lo, hi): (Vec<f64>, Vec<f64>) = (0..dims)
                    .map(|m| {
                        let axis = table.grid().axis(m);
                        (axis[0] - 8.0 * hs[m], axis.last().unwrap() + 8.0 * hs[m])
                    })
                    .unzip();
                let integral = if dims == 1 {
                    quadrature::integrate(
                        &|x| density_at(&table, Kernel::Gaussian, &h, &[x]).unwrap(),
                        lo[0],
                        hi[0],
                        1e-6,
                    )
                    .unwrap()
                } else {
                    quadrature::integrate_box(
                        &|p| density_at(&table, Kernel::Gaussian, &h, p).unwrap(),
                        &lo,
                        &hi,
                        1e-6,
                    )
                    .unwrap()
                };
                worst = worst.max((integral - mass).abs());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    println!("acceptance 05 kde mass: max |integral - total weight| = {worst:.2e} (tol 1e-4)");
    assert!(worst <= 1e-4);
}

#[test]
fn acceptance_06a_exact_data_kde_is_parzen() {
    let mut rng = StdRng::seed_from_u64(60);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=40);
        let (sample, values) = random_exact_sample(&mut rng, n);
        let cdf = estimate_cdf_grid(&sample).unwrap();
        let table = weights_1d(&cdf).unwrap();
        let h = rng.random_range(0.3..2.0);
        let hb = Bandwidth::scalar(h).unwrap();
        for _ in 0..20 {
            let x = rng.random_range(-6.0..6.0);
            let ours = density_at(&table, Kernel::Gaussian, &hb, &[x]).unwrap();
            let parzen =
                values.iter().map(|&v| normal_pdf((x - v) / h)).sum::<f64>() / (n as f64 * h);
            worst = worst.max((ours - parzen).abs());
        }
    }
    println!("acceptance 06a parzen reduction: max |delta| = {worst:.2e} (tol 1e-12)");
    assert!(worst <= 1e-12);
}

#[test]
fn acceptance_06b_exact_data_score_is_classical_lscv() {
    let mut rng = StdRng::seed_from_u64(61);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=30);
        let (sample, values) = random_exact_sample(&mut rng, n);
        let h = rng.random_range(0.3..2.0);
        let ev = score_m0_tilde(&sample, Kernel::Gaussian, &Bandwidth::scalar(h).unwrap()).unwrap();

        let nf = n as f64;
        let mut integral = 0.0;
        for &a in &values {
            for &b in &values {
                let s = h * SQRT_2;
                integral += normal_pdf((a - b) / s) / s;
            }
        }
        integral /= nf * nf;
        let mut loo = 0.0;
        for (i, &a) in values.iter().enumerate() {
            let mut fi = 0.0;
            for (j, &b) in values.iter().enumerate() {
                if i != j {
                    fi += normal_pdf((a - b) / h) / h;
                }
            }
            loo += fi / (nf - 1.0);
        }
        let classical = integral - 2.0 / nf * loo;
        worst = worst.max((ev.score - classical).abs());
    }
    println!("acceptance 06b lscv reduction: max |delta| = {worst:.2e} (tol 1e-9)");
    assert!(worst <= 1e-9);
}

#[test]
fn acceptance_06c_exact_data_regression_is_classical_nw() {
    let mut rng = StdRng::seed_from_u64(62);
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let covariates = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.random_range(3..=25);
        let points: Vec<(Vec<f64>, f64)> = (0..n)
            .map(|_| {
                let x: Vec<f64> = (0..covariates)
                    .map(|_| rng.random_range(-2.0..2.0))
                    .collect();
                (x, rng.random_range(-3.0..3.0))
            })
            .collect();
        let obs = points
            .iter()
            .map(|(x, y)| {
                let mut coords: Vec<CensoredScalar> = x
                    .iter()
                    .map(|&v| CensoredScalar::exact(v).unwrap())
                    .collect();
                coords.push(CensoredScalar::exact(*y).unwrap());
                orcdf::CensoredVector::new(coords).unwrap()
            })
            .collect();
        let sample = Sample::new(obs).unwrap();
        let h: Vec<f64> = (0..covariates)
            .map(|_| rng.random_range(0.4..1.5))
            .collect();
        let model = fit(
            &sample,
            Kernel::Gaussian,
            &Bandwidth::new(h.clone()).unwrap(),
        )
        .unwrap();
        for _ in 0..5 {
            let x: Vec<f64> = (0..covariates)
                .map(|_| rng.random_range(-1.5..1.5))
                .collect();
            let ours = predict(&model, &x).unwrap();
            let mut num = 0.0;
            let mut den = 0.0;
            for (xi, yi) in &points {
                let mut k = 1.0;
                for m in 0..covariates {
                    k *= normal_pdf((x[m] - xi[m]) / h[m]);
                }
                num += k * yi;
                den += k;
            }
            worst = worst.max((ours - num / den).abs());
        }
    }
    println!("acceptance 06c nadaraya-watson reduction: max |delta| = {worst:.2e} (tol 1e-10)");
    assert!(worst <= 1e-10);
}

#[test]
fn acceptance_07_gaussian_integral_closed_form_vs_quadrature() {
    let cases: Vec<u64> = (0..50).collect();
    let worst = cases
        .par_iter()
        .map(|&seed| {
            let mut rng = StdRng::seed_from_u64(700 + seed);
            let two_d = seed % 5 < 2;
            let (grid, weights) = if two_d {
                let axes = vec![sorted_axis(&mut rng, 3), sorted_axis(&mut rng, 3)];
                let shape = [axes[0].len(), axes[1].len()];
                let w = random_weights(&mut rng, shape[0] * shape[1]);
                (
                    Grid::new(axes).unwrap(),
                    GridArray::from_vec(&shape, w).unwrap(),
                )
            } else {
                let len = rng.random_range(2..=8);
                let axis = sorted_axis(&mut rng, len);
                let len = axis.len();
                let w = random_weights(&mut rng, len);
                (
                    Grid::new(vec![axis]).unwrap(),
                    GridArray::from_vec(&[len], w).unwrap(),
                )
            };
            let dims = grid.dimension();
            let table = WeightTable::from_weights(grid, weights).unwrap();
            let h =
                Bandwidth::new((0..dims).map(|_| rng.random_range(0.3..1.5)).collect()).unwrap();
            let closed = orcdf::integral_fhat_squared(&table, Kernel::Gaussian, &h).unwrap();
            let hs = h.components().to_vec();
            let (lo, hi): (Vec<f64>, Vec<f64>) = (0..dims)
                .map(|m| {
                    let axis = table.grid().axis(m);
                    (axis[0] - 8.0 * hs[m], axis.last().unwrap() + 8.0 * hs[m])
                })
                .unzip();
            let f = |p: &[f64]| {
                let v = density_at(&table, Kernel::Gaussian, &h, p).unwrap();
                v * v
            };
            let quad = if dims == 1 {
                quadrature::integrate_rel(&|x| f(&[x]), lo[0], hi[0], 1e-8).unwrap()
            } else {
                let rough = quadrature::integrate_box(&f, &lo, &hi, 1e-6).unwrap();
                quadrature::integrate_box(&f, &lo, &hi, (rough * 1e-8).max(1e-13)).unwrap()
            };
            ((closed - quad) / quad).abs()
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "acceptance 07 closed-form integral vs quadrature: max rel delta = {worst:.2e} (tol 1e-6)"
    );
    assert!(worst <= 1e-6);
}

fn sorted_axis(rng: &mut StdRng, len: usize) -> Vec<f64> {
    let mut axis: Vec<f64> = (0..len).map(|_| rng.random_range(-3.0..3.0)).collect();
    axis.sort_by(|a, b| a.partial_cmp(b).unwrap());
    axis.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    axis
}

fn random_weights(rng: &mut StdRng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let scale = rng.random_range(0.5..1.0) / total;
    raw.iter().map(|w| w * scale).collect()
}

#[test]
fn acceptance_08_multinomial_em_vs_grid_oracle() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=15u64);
        let c1 = rng.random_range(0..=n);
        let c2 = rng.random_range(0..=n - c1);
        let counts = DiscreteCensoredCounts::new(vec![c1, c2], n).unwrap();
        let u = counts.unobserved();
        let q1 = if c1 > 0 {
            rng.random_range(0.1..=1.0)
        } else {
            rng.random_range(0.0..=1.0)
        };
        let q2 = if c2 > 0 {
            rng.random_range(0.1..=1.0)
        } else {
            rng.random_range(0.0..=1.0)
        };
        let (q1, q2) = if u > 0 && q1 == 1.0 && q2 == 1.0 {
            (0.9, q2)
        } else {
            (q1, q2)
        };
        let q = ObservationProbabilities::all_known(vec![q1, q2]).unwrap();
        let (est, trace) = orcdf::multinomial::known_q_mle_with_trace(&counts, &q).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-10, "em log-likelihood decreased");
        }
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=10_000 {
            let p1 = i as f64 / 10_000.0;
            let ll =
                orcdf::multinomial::known_q_log_likelihood(&counts, &q, &[p1, 1.0 - p1]).unwrap();
            if ll > best.1 {
                best = (p1, ll);
            }
        }
        worst = worst.max((est.probabilities[0] - best.0).abs());
    }

    // Fully observed experiments normalize to the exact count ratio.
    for _ in 0..50 {
        let n = rng.random_range(1..=30u64);
        let c1 = rng.random_range(0..=n);
        let counts = DiscreteCensoredCounts::new(vec![c1, n - c1], n).unwrap();
        let est = multinomial_normalized_estimate(&counts).unwrap();
        assert_eq!(est.probabilities[0], c1 as f64 / n as f64);
        assert_eq!(est.probabilities[1], (n - c1) as f64 / n as f64);
    }
    println!("acceptance 08 em vs grid oracle: max |delta| = {worst:.2e} (tol 1e-4)");
    assert!(worst <= 1e-4);
}

#[test]
fn acceptance_09_contingency_fits_vs_oracles() {
    use orcdf::numeric::{count_ln, ln_choose, ln_factorials, log_sum_exp};
    use orcdf::{fit_example1, fit_example2, fit_example3, table_probability};

    let mut rng = StdRng::seed_from_u64(9);

    // Structure 1: golden-section null fit against a dense scan.
    let mut worst1: f64 = 0.0;
    for _ in 0..12 {
        let n1 = rng.random_range(2..=10u64);
        let n2 = rng.random_range(2..=10u64);
        let n11 = rng.random_range(0..=n1);
        let c12 = rng.random_range(0..=n2);
        let u2 = rng.random_range(0..=n2 - c12);
        let c22 = n2 - c12 - u2;
        let table = Table2x2::with_column_totals([[n11, c12], [n1 - n11, c22]], [n1, n2]).unwrap();
        let p0 = fit_example1(&table, true).unwrap().null_p.unwrap();

        let lnfact = ln_factorials((n1 + n2) as usize);
        let ll = |p: f64| {
            let terms: Vec<f64> = (c12..=c12 + u2)
                .map(|n12| {
                    ln_choose(&lnfact, n1 as usize, n11 as usize)
                        + ln_choose(&lnfact, n2 as usize, n12 as usize)
                        + count_ln((n11 + n12) as f64, p)
                        + count_ln((n1 + n2 - n11 - n12) as f64, 1.0 - p)
                })
                .collect();
            log_sum_exp(&terms)
        };
        let oracle = dense_argmax(&ll, 1_000_000);
        worst1 = worst1.max((p0 - oracle).abs());
    }

    // Structure 2: same with both columns censored.
    let mut worst2: f64 = 0.0;
    for _ in 0..12 {
        let n1 = rng.random_range(2..=8u64);
        let n2 = rng.random_range(2..=8u64);
        let c11 = rng.random_range(0..=n1);
        let u1 = rng.random_range(0..=(n1 - c11).min(2));
        let c12 = rng.random_range(0..=n2);
        let u2 = rng.random_range(0..=(n2 - c12).min(2));
        let table =
            Table2x2::with_column_totals([[c11, c12], [n1 - c11 - u1, n2 - c12 - u2]], [n1, n2])
                .unwrap();
        if c11 == 0 && c12 == 0 && u1 == n1 && u2 == n2 {
            continue;
        }
        let p0 = fit_example2(&table, true).unwrap().null_p.unwrap();
        let lnfact = ln_factorials((n1 + n2) as usize);
        let ll = |p: f64| {
            let mut terms = Vec::new();
            for a in c11..=c11 + u1 {
                for b in c12..=c12 + u2 {
                    terms.push(
                        ln_choose(&lnfact, n1 as usize, a as usize)
                            + ln_choose(&lnfact, n2 as usize, b as usize)
                            + count_ln((a + b) as f64, p)
                            + count_ln((n1 + n2 - a - b) as f64, 1.0 - p),
                    );
                }
            }
            log_sum_exp(&terms)
        };
        let oracle = dense_argmax(&ll, 1_000_000);
        worst2 = worst2.max((p0 - oracle).abs());
    }

    // Structure 3: the pinned instance plus random tables against the
    // 0.01-step simplex grid, the null against a dense scan, and the
    // probability identity.
    let mut tables3 = vec![Table2x2::without_totals([[2, 1], [1, 2]], 8).unwrap()];
    for _ in 0..3 {
        let cells = [
            [rng.random_range(0..=3u64), rng.random_range(0..=3u64)],
            [rng.random_range(0..=3u64), rng.random_range(0..=3u64)],
        ];
        let u = rng.random_range(0..=3u64);
        let total = cells.iter().flatten().sum::<u64>() + u;
        if total == 0 {
            continue;
        }
        tables3.push(Table2x2::without_totals(cells, total).unwrap());
    }
    let mut worst3: f64 = 0.0;
    for table in &tables3 {
        let fit3 = fit_example3(table, false).unwrap();
        let cells = table.counts();
        let counts = DiscreteCensoredCounts::new(
            vec![cells[0][0], cells[1][0], cells[0][1], cells[1][1]],
            table.total(),
        )
        .unwrap();
        let steps = 100usize;
        let mut best = (vec![0.25; 4], f64::NEG_INFINITY);
        for a in 0..=steps {
            for b in 0..=steps - a {
                for c in 0..=steps - a - b {
                    let d = steps - a - b - c;
                    let p = vec![
                        a as f64 / steps as f64,
                        b as f64 / steps as f64,
                        c as f64 / steps as f64,
                        d as f64 / steps as f64,
                    ];
                    let ll =
                        orcdf::multinomial::exact_multinomial_log_likelihood(&counts, &p).unwrap();
                    if ll > best.1 {
                        best = (p, ll);
                    }
                }
            }
        }
        let got = [
            fit3.pi_hat[0][0],
            fit3.pi_hat[1][0],
            fit3.pi_hat[0][1],
            fit3.pi_hat[1][1],
        ];
        for (g, w) in got.iter().zip(&best.0) {
            worst3 = worst3.max((g - w).abs());
        }
    }
    let table = tables3[0].clone();

    let null3 = fit_example3(&table, true).unwrap();
    let lnfact = ln_factorials(8);
    let c = table.counts();
    let u = table.unobserved();
    let ll_null = |p: f64| {
        let mut terms = Vec::new();
        for e11 in 0..=u {
            for e21 in 0..=u - e11 {
                for e12 in 0..=u - e11 - e21 {
                    let e22 = u - e11 - e21 - e12;
                    let n11 = c[0][0] + e11;
                    let n21 = c[1][0] + e21;
                    let n12 = c[0][1] + e12;
                    let n22 = c[1][1] + e22;
                    terms.push(
                        lnfact[8]
                            - lnfact[n11 as usize]
                            - lnfact[n21 as usize]
                            - lnfact[n12 as usize]
                            - lnfact[n22 as usize]
                            + count_ln((n11 + n12) as f64, p)
                            + count_ln((n21 + n22) as f64, 1.0 - p),
                    );
                }
            }
        }
        log_sum_exp(&terms)
    };
    let null_oracle = dense_argmax(&ll_null, 1_000_000);
    let worst3_null = (null3.null_p.unwrap() - null_oracle).abs();

    // Null fitting never changes the configuration probability here.
    for (cfg, total) in [
        ([[2u64, 1], [1, 2]], 8u64),
        ([[0, 3], [2, 0]], 9),
        ([[1, 1], [1, 1]], 4),
    ] {
        let t = Table2x2::without_totals(cfg, total).unwrap();
        let plain = fit_example3(&t, false).unwrap();
        let null = fit_example3(&t, true).unwrap();
        let a = table_probability(&t, &plain, ExampleKind::Example3).unwrap();
        let b = table_probability(&t, &null, ExampleKind::Example3).unwrap();
        assert_eq!(a, b, "null fit changed the table probability");
    }

    println!(
        "acceptance 09 contingency: null deltas {worst1:.2e} / {worst2:.2e} / {worst3_null:.2e} (tol 1e-5), simplex delta {worst3:.2e} (tol 0.02), probability identity exact"
    );
    assert!(worst1 <= 1e-5);
    assert!(worst2 <= 1e-5);
    assert!(worst3_null <= 1e-5);
    assert!(worst3 <= 0.02);
}

fn dense_argmax<F: Fn(f64) -> f64>(f: &F, resolution: usize) -> f64 {
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..=resolution {
        let p = i as f64 / resolution as f64;
        let v = f(p);
        if v > best.1 {
            best = (p, v);
        }
    }
    best.0
}

#[test]
fn acceptance_10_sup_distance_shrinks_with_sample_size() {
    use rand_distr::{Distribution, Normal};

    let sizes = [100usize, 400, 1600];
    let replications = 20;
    let medians: Vec<f64> = sizes
        .iter()
        .map(|&n| {
            let mut sups: Vec<f64> = (0..replications)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = StdRng::seed_from_u64(1000 + n as u64 * 31 + rep as u64);
                    let normal = Normal::new(0.0, 1.0).unwrap();
                    let width = 0.5;
                    let coords: Vec<CensoredScalar> = (0..n)
                        .map(|_| {
                            let x: f64 = normal.sample(&mut rng);
                            let offset: f64 = rng.random_range(0.0..width);
                            CensoredScalar::interval(x - offset, x - offset + width).unwrap()
                        })
                        .collect();
                    let sample = Sample::univariate(coords).unwrap();
                    let est = estimate_cdf_grid(&sample).unwrap();
                    let mut sup: f64 = 0.0;
                    for (i, &g) in est.grid().axis(0).iter().enumerate() {
                        sup = sup.max((est.value_at(&[i]) - normal_cdf(g)).abs());
                    }
                    sup
                })
                .collect();
            sups.sort_by(|a, b| a.partial_cmp(b).unwrap());
            0.5 * (sups[replications / 2 - 1] + sups[replications / 2])
        })
        .collect();
    println!(
        "acceptance 10 consistency: median sup-distance {:.4} > {:.4} > {:.4} over N = 100, 400, 1600",
        medians[0], medians[1], medians[2]
    );
    assert!(medians[0] > medians[1] && medians[1] > medians[2]);
}

#[test]
fn acceptance_bandwidth_and_midpoints_are_exercised() {
    // Smoke coverage for the pieces the numbered criteria use indirectly.
    let mut rng = StdRng::seed_from_u64(11);
    let sample = random_sample_1d(&mut rng, 12, 0.1);
    let grid = build_grid(&sample).unwrap();
    let mids = midpoints(&sample, &grid);
    assert_eq!(mids.len(), sample.len());
    for point in mids.iter() {
        assert!(point[0].is_finite());
    }
    let c = count_at(&sample, &[0.0]).unwrap();
    assert_eq!(c.total(), sample.len());
    let q = known_q_mle(
        &DiscreteCensoredCounts::new(vec![3, 2], 7).unwrap(),
        &ObservationProbabilities::all_known(vec![0.8, 0.9]).unwrap(),
    )
    .unwrap();
    assert!((q.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-9);
}
