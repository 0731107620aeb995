//! Censored 2x2 contingency tables: the occurrence/observation
//! decomposition `alpha = pi * q`, three likelihood structures (exact
//! first column, both columns censored, no column totals), null-constrained
//! fits, and plug-in probabilities of the observed table configuration.

use crate::censored::CountTriple;
use crate::error::{Error, Result};
use crate::estimator::closed_form_fhat;
use crate::multinomial::{exact_multinomial_mle_seeded, DiscreteCensoredCounts};
use crate::numeric::{count_ln, golden_section_max, ln_choose, ln_factorials, log_sum_exp};

/// Which of the three censored-table structures applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleKind {
    /// Column totals fixed, first column exact, second censored.
    Example1,
    /// Column totals fixed, both columns censored.
    Example2,
    /// No column totals; one global censored count.
    Example3,
}

/// Observed counts of a 2x2 table, with or without known column totals.
///
/// Rows index the outcome within a column; columns are the two
/// experimental groups. With known totals each column carries its own
/// censored count; without them a single global censored count remains.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2x2 {
    counts: [[u64; 2]; 2],
    column_totals: Option<[u64; 2]>,
    total: u64,
}

impl Table2x2 {
    pub fn with_column_totals(counts: [[u64; 2]; 2], totals: [u64; 2]) -> Result<Self> {
        for j in 0..2 {
            let observed = counts[0][j] + counts[1][j];
            if observed > totals[j] {
                return Err(Error::InvalidCounts(format!(
                    "column {j} observes {observed} outcomes, more than its total {}",
                    totals[j]
                )));
            }
            if totals[j] == 0 {
                return Err(Error::InvalidCounts(format!("column {j} has no trials")));
            }
        }
        Ok(Table2x2 {
            counts,
            column_totals: Some(totals),
            total: totals[0] + totals[1],
        })
    }

    pub fn without_totals(counts: [[u64; 2]; 2], total: u64) -> Result<Self> {
        let observed: u64 = counts.iter().flatten().sum();
        if observed > total {
            return Err(Error::InvalidCounts(format!(
                "table observes {observed} outcomes, more than the {total} trials"
            )));
        }
        if total == 0 {
            return Err(Error::InvalidCounts("no trials".into()));
        }
        Ok(Table2x2 {
            counts,
            column_totals: None,
            total,
        })
    }

    pub fn counts(&self) -> [[u64; 2]; 2] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn column_totals(&self) -> Option<[u64; 2]> {
        self.column_totals
    }

    /// Per-column censored counts, when column totals are known.
    pub fn column_censored(&self) -> Option<[u64; 2]> {
        self.column_totals.map(|totals| {
            [
                totals[0] - self.counts[0][0] - self.counts[1][0],
                totals[1] - self.counts[0][1] - self.counts[1][1],
            ]
        })
    }

    /// Global censored count `N - sum(c)`.
    pub fn unobserved(&self) -> u64 {
        self.total - self.counts.iter().flatten().sum::<u64>()
    }
}

/// Fitted cell quantities. `pi_hat` are conditional cell probabilities
/// (per column when totals are known); `alpha_hat` are the joint
/// occur-and-observe probabilities against the matching trial pool;
/// `q_hat` the plug-in observation probabilities, absent where the
/// corresponding `pi_hat` vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEstimates {
    pub pi_hat: [[f64; 2]; 2],
    pub alpha_hat: [[f64; 2]; 2],
    pub q_hat: [[Option<f64>; 2]; 2],
    pub under_null: bool,
    /// The shared success probability when fitted under the null.
    pub null_p: Option<f64>,
}

/// Joint occur-and-observe probabilities against the global trial count.
pub fn estimate_alpha(table: &Table2x2) -> [[f64; 2]; 2] {
    let n = table.total as f64;
    let mut alpha = [[0.0; 2]; 2];
    for (i, row) in alpha.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = table.counts[i][j] as f64 / n;
        }
    }
    alpha
}

/// Alpha estimates scoped to the pools that generated the counts: per
/// column when totals are fixed, global otherwise. This keeps
/// `q = alpha / pi` meaningful against the per-column `pi`.
fn alpha_for_structure(table: &Table2x2) -> [[f64; 2]; 2] {
    match table.column_totals {
        Some(totals) => {
            let mut alpha = [[0.0; 2]; 2];
            for (i, row) in alpha.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = table.counts[i][j] as f64 / totals[j] as f64;
                }
            }
            alpha
        }
        None => estimate_alpha(table),
    }
}

fn finish(
    table: &Table2x2,
    pi: [[f64; 2]; 2],
    under_null: bool,
    null_p: Option<f64>,
) -> TableEstimates {
    let alpha = alpha_for_structure(table);
    let mut q = [[None; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            if pi[i][j] > 0.0 {
                q[i][j] = Some(alpha[i][j] / pi[i][j]);
            }
        }
    }
    TableEstimates {
        pi_hat: pi,
        alpha_hat: alpha,
        q_hat: q,
        under_null,
        null_p,
    }
}

/// Maximize a log-likelihood over [0, 1]: a 1024-point scan to bracket the
/// optimum, then golden-section to tolerance 1e-8.
fn maximize_unit_interval<F: Fn(f64) -> f64>(f: F) -> f64 {
    const SCAN: usize = 1024;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=SCAN {
        let v = f(i as f64 / SCAN as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = best_i.saturating_sub(1) as f64 / SCAN as f64;
    let hi = ((best_i + 1) as f64 / SCAN as f64).min(1.0);
    golden_section_max(f, lo, hi, 1e-8)
}

fn column_closed_form(c_top: u64, censored: u64, total: u64) -> f64 {
    closed_form_fhat(CountTriple::new(
        c_top as usize,
        censored as usize,
        (total - c_top - censored) as usize,
    ))
}

/// Log-likelihood of the shared success probability `p` under the null
/// constraint, for the given table structure. This is the function the
/// null fits maximize; exposed for diagnostics and self-checks.
pub fn null_log_likelihood(table: &Table2x2, example: ExampleKind, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let c = table.counts;
    let n = table.total;
    let lnfact = ln_factorials(n as usize);
    match example {
        ExampleKind::Example1 | ExampleKind::Example2 => {
            let Some(totals) = table.column_totals else {
                return Err(Error::StructureMismatch(
                    "column totals are required".into(),
                ));
            };
            let censored = table.column_censored().expect("totals known");
            if example == ExampleKind::Example1 && censored[0] != 0 {
                return Err(Error::StructureMismatch(
                    "first column must be exact".into(),
                ));
            }
            let (c11, c12) = (c[0][0], c[0][1]);
            let (u1, u2) = (censored[0], censored[1]);
            let mut terms = Vec::with_capacity(((u1 + 1) * (u2 + 1)) as usize);
            for n11 in c11..=c11 + u1 {
                for n12 in c12..=c12 + u2 {
                    terms.push(
                        ln_choose(&lnfact, totals[0] as usize, n11 as usize)
                            + ln_choose(&lnfact, totals[1] as usize, n12 as usize)
                            + count_ln((n11 + n12) as f64, p)
                            + count_ln((n - n11 - n12) as f64, 1.0 - p),
                    );
                }
            }
            Ok(log_sum_exp(&terms))
        }
        ExampleKind::Example3 => {
            if table.column_totals.is_some() {
                return Err(Error::StructureMismatch(
                    "column totals must be unknown".into(),
                ));
            }
            let u = table.unobserved();
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
                            lnfact[n as usize]
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
            Ok(log_sum_exp(&terms))
        }
    }
}

/// Fit the structure with fixed column totals and an exactly-counted
/// first column. Unconstrained, the two column factors maximize
/// separately: a plain binomial ratio for column 1 and the observed-range
/// closed form for column 2. Under the null the shared `p` maximizes the
/// summed product likelihood.
pub fn fit_example1(table: &Table2x2, under_null: bool) -> Result<TableEstimates> {
    let Some(totals) = table.column_totals else {
        return Err(Error::StructureMismatch(
            "column totals are required".into(),
        ));
    };
    let censored = table.column_censored().expect("totals known");
    if censored[0] != 0 {
        return Err(Error::StructureMismatch(format!(
            "first column must be exact, found {} censored outcomes",
            censored[0]
        )));
    }
    let n11 = table.counts[0][0];
    let (n1, n2) = (totals[0], totals[1]);
    let c12 = table.counts[0][1];
    let u2 = censored[1];

    let pi = if under_null {
        let p0 = maximize_unit_interval(|p| {
            null_log_likelihood(table, ExampleKind::Example1, p).expect("structure checked")
        });
        [[p0, p0], [1.0 - p0, 1.0 - p0]]
    } else {
        let p11 = n11 as f64 / n1 as f64;
        let p12 = column_closed_form(c12, u2, n2);
        [[p11, p12], [1.0 - p11, 1.0 - p12]]
    };
    let null_p = if under_null { Some(pi[0][0]) } else { None };
    Ok(finish(table, pi, under_null, null_p))
}

/// Fit the structure with fixed column totals and both columns censored.
/// The unconstrained column factors are independent observed-range
/// problems; the null likelihood sums over both unknown counts.
pub fn fit_example2(table: &Table2x2, under_null: bool) -> Result<TableEstimates> {
    let Some(totals) = table.column_totals else {
        return Err(Error::StructureMismatch(
            "column totals are required".into(),
        ));
    };
    let censored = table.column_censored().expect("totals known");
    let (n1, n2) = (totals[0], totals[1]);
    let (c11, c12) = (table.counts[0][0], table.counts[0][1]);
    let (u1, u2) = (censored[0], censored[1]);

    let pi = if under_null {
        let p0 = if c11 == 0 && c12 == 0 && u1 == n1 && u2 == n2 {
            // Everything censored: the summed likelihood is identically 1,
            // so take the conventional midpoint, as the closed form does.
            0.5
        } else {
            maximize_unit_interval(|p| {
                null_log_likelihood(table, ExampleKind::Example2, p).expect("structure checked")
            })
        };
        [[p0, p0], [1.0 - p0, 1.0 - p0]]
    } else {
        let p11 = column_closed_form(c11, u1, n1);
        let p12 = column_closed_form(c12, u2, n2);
        [[p11, p12], [1.0 - p11, 1.0 - p12]]
    };
    let null_p = if under_null { Some(pi[0][0]) } else { None };
    Ok(finish(table, pi, under_null, null_p))
}

/// Fit the structure without column totals. Unconstrained, the cell
/// probabilities maximize the exact band likelihood over the 4-simplex;
/// under the null a single `p` scales the top row against the bottom.
pub fn fit_example3(table: &Table2x2, under_null: bool) -> Result<TableEstimates> {
    fit_example3_seeded(table, under_null, 2, 0)
}

/// As [`fit_example3`] with explicit restart count and seed for the
/// simplex ascent.
pub fn fit_example3_seeded(
    table: &Table2x2,
    under_null: bool,
    restarts: usize,
    seed: u64,
) -> Result<TableEstimates> {
    if table.column_totals.is_some() {
        return Err(Error::StructureMismatch(
            "column totals must be unknown".into(),
        ));
    }
    let c = table.counts;
    let u = table.unobserved();
    let n = table.total;

    let pi = if under_null {
        let p0 = if u == n {
            // Flat summed likelihood; conventional midpoint.
            0.5
        } else {
            maximize_unit_interval(|p| {
                null_log_likelihood(table, ExampleKind::Example3, p).expect("structure checked")
            })
        };
        [[p0, p0], [1.0 - p0, 1.0 - p0]]
    } else {
        // Cell order (11, 21, 12, 22).
        let counts = DiscreteCensoredCounts::new(vec![c[0][0], c[1][0], c[0][1], c[1][1]], n)?;
        let est = exact_multinomial_mle_seeded(&counts, restarts, seed)?;
        let p = est.probabilities;
        [[p[0], p[2]], [p[1], p[3]]]
    };
    let null_p = if under_null { Some(pi[0][0]) } else { None };
    Ok(finish(table, pi, under_null, null_p))
}

/// Plug-in probability of the observed table configuration under the
/// fitted quantities, per the matching example structure. Fixed-total
/// structures multiply per-column multinomial factors (the first using
/// the cell probabilities when the column is exact, the joint
/// observe-probabilities otherwise); the total-free structure is one
/// five-category multinomial including the censored pool. Under the
/// third structure the null fit changes nothing.
pub fn table_probability(
    table: &Table2x2,
    estimates: &TableEstimates,
    example: ExampleKind,
) -> Result<f64> {
    let c = table.counts;
    match example {
        ExampleKind::Example1 => {
            let Some(totals) = table.column_totals else {
                return Err(Error::StructureMismatch(
                    "column totals are required".into(),
                ));
            };
            let censored = table.column_censored().expect("totals known");
            if censored[0] != 0 {
                return Err(Error::StructureMismatch(
                    "first column must be exact".into(),
                ));
            }
            let lnfact = ln_factorials(table.total as usize);
            let pi = estimates.pi_hat;
            let ln_p1 =
                lnfact[totals[0] as usize] - lnfact[c[0][0] as usize] - lnfact[c[1][0] as usize]
                    + count_ln(c[0][0] as f64, pi[0][0])
                    + count_ln(c[1][0] as f64, pi[1][0]);
            let ln_p2 = column_config_ln(
                &lnfact,
                totals[1],
                [c[0][1], c[1][1]],
                censored[1],
                [estimates.alpha_hat[0][1], estimates.alpha_hat[1][1]],
            );
            Ok((ln_p1 + ln_p2).exp())
        }
        ExampleKind::Example2 => {
            let Some(totals) = table.column_totals else {
                return Err(Error::StructureMismatch(
                    "column totals are required".into(),
                ));
            };
            let censored = table.column_censored().expect("totals known");
            let lnfact = ln_factorials(table.total as usize);
            let mut ln_prob = 0.0;
            for j in 0..2 {
                ln_prob += column_config_ln(
                    &lnfact,
                    totals[j],
                    [c[0][j], c[1][j]],
                    censored[j],
                    [estimates.alpha_hat[0][j], estimates.alpha_hat[1][j]],
                );
            }
            Ok(ln_prob.exp())
        }
        ExampleKind::Example3 => {
            if table.column_totals.is_some() {
                return Err(Error::StructureMismatch(
                    "column totals must be unknown".into(),
                ));
            }
            let n = table.total;
            let u = table.unobserved();
            let lnfact = ln_factorials(n as usize);
            let alpha = estimates.alpha_hat;
            let mut ln_prob = lnfact[n as usize] - lnfact[u as usize];
            let mut alpha_sum = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    ln_prob -= lnfact[c[i][j] as usize];
                    ln_prob += count_ln(c[i][j] as f64, alpha[i][j]);
                    alpha_sum += alpha[i][j];
                }
            }
            ln_prob += count_ln(u as f64, 1.0 - alpha_sum);
            Ok(ln_prob.exp())
        }
    }
}

/// Log-probability of one censored column configuration: a trinomial over
/// (top observed, bottom observed, censored).
fn column_config_ln(
    lnfact: &[f64],
    total: u64,
    observed: [u64; 2],
    censored: u64,
    alpha: [f64; 2],
) -> f64 {
    lnfact[total as usize]
        - lnfact[observed[0] as usize]
        - lnfact[observed[1] as usize]
        - lnfact[censored as usize]
        + count_ln(observed[0] as f64, alpha[0])
        + count_ln(observed[1] as f64, alpha[1])
        + count_ln(censored as f64, 1.0 - alpha[0] - alpha[1])
}
