//! Parameter estimation for binomial and multinomial experiments whose
//! outcome counts are partially unobserved: the closed-form binomial case,
//! the normalized per-type approximation, exact band likelihoods over
//! count compositions, and censoring-aware likelihoods with known or
//! partially known observation probabilities.

use crate::censored::CountTriple;
use crate::error::{Error, Result};
use crate::estimator::closed_form_fhat;
use crate::numeric::{count_ln, golden_section_max, ln_factorials, log_sum_exp, uniform_open01};

/// Default cap on the number of enumerated count compositions.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

const EM_TOL: f64 = 1e-12;
const EM_MAX_ITER: usize = 100_000;

/// Observed per-type counts of a censored experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCensoredCounts {
    observed: Vec<u64>,
    trials: u64,
    per_type_caps: Option<Vec<u64>>,
}

impl DiscreteCensoredCounts {
    /// Observed counts `c` out of `trials`; the shortfall is the number of
    /// trials whose outcome type went unobserved.
    pub fn new(observed: Vec<u64>, trials: u64) -> Result<Self> {
        if observed.is_empty() {
            return Err(Error::InvalidCounts("no outcome types".into()));
        }
        if trials == 0 {
            return Err(Error::InvalidCounts("no trials".into()));
        }
        let total: u64 = observed.iter().sum();
        if total > trials {
            return Err(Error::InvalidCounts(format!(
                "observed counts sum to {total}, more than the {trials} trials"
            )));
        }
        Ok(DiscreteCensoredCounts {
            observed,
            trials,
            per_type_caps: None,
        })
    }

    /// Counts with per-type caps on how many of the unobserved trials can
    /// be of each type.
    pub fn with_per_type_caps(observed: Vec<u64>, trials: u64, caps: Vec<u64>) -> Result<Self> {
        let mut counts = DiscreteCensoredCounts::new(observed, trials)?;
        if caps.len() != counts.observed.len() {
            return Err(Error::InvalidCounts(
                "per-type caps must match the number of types".into(),
            ));
        }
        let u = counts.unobserved();
        if caps.iter().any(|&cap| cap > u) {
            return Err(Error::InvalidCounts(
                "a per-type cap exceeds the unobserved count".into(),
            ));
        }
        counts.per_type_caps = Some(caps);
        Ok(counts)
    }

    /// Trinomial experiment where the unobserved trials split into a group
    /// known to be of type 1 or 2 and a group known to be of type 2 or 3.
    pub fn trinomial_partial(observed: [u64; 3], trials: u64, u12: u64, u23: u64) -> Result<Self> {
        let base = DiscreteCensoredCounts::new(observed.to_vec(), trials)?;
        let u = base.unobserved();
        if u12 + u23 != u {
            return Err(Error::InvalidCounts(format!(
                "partial groups sum to {}, but {u} trials are unobserved",
                u12 + u23
            )));
        }
        let caps = vec![u12, u.min(u12 + u23), u23];
        DiscreteCensoredCounts::with_per_type_caps(observed.to_vec(), trials, caps)
    }

    pub fn num_types(&self) -> usize {
        self.observed.len()
    }

    pub fn observed(&self) -> &[u64] {
        &self.observed
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Number of trials whose type went unobserved.
    pub fn unobserved(&self) -> u64 {
        self.trials - self.observed.iter().sum::<u64>()
    }

    pub fn per_type_caps(&self) -> Option<&[u64]> {
        self.per_type_caps.as_deref()
    }

    /// Cap on unobserved outcomes of type `m`: the per-type cap when
    /// present, otherwise the global unobserved count.
    pub fn unobserved_cap(&self, m: usize) -> u64 {
        match &self.per_type_caps {
            Some(caps) => caps[m],
            None => self.unobserved(),
        }
    }
}

/// Per-type conditional probabilities of an outcome being observed.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationProbabilities {
    values: Vec<f64>,
    known: Vec<bool>,
}

impl ObservationProbabilities {
    pub fn all_known(values: Vec<f64>) -> Result<Self> {
        for &q in &values {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::InvalidProbability(q));
            }
        }
        let known = vec![true; values.len()];
        Ok(ObservationProbabilities { values, known })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn known(&self) -> &[bool] {
        &self.known
    }

    pub fn is_all_known(&self) -> bool {
        self.known.iter().all(|&k| k)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// How a simplex estimate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    ClosedForm,
    Normalized,
    Em,
    GridMax,
}

/// A probability vector estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexEstimate {
    pub probabilities: Vec<f64>,
    pub method: EstimateMethod,
}

/// Closed-form estimate of the type-1 probability in a censored binomial
/// experiment: the observed-range estimator with `d = c_1`, `a = c_2`.
pub fn binomial_censored_mle(counts: &DiscreteCensoredCounts) -> Result<f64> {
    if counts.num_types() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: counts.num_types(),
        });
    }
    Ok(closed_form_fhat(CountTriple::new(
        counts.observed[0] as usize,
        counts.unobserved() as usize,
        counts.observed[1] as usize,
    )))
}

/// The normalized per-type approximation: each type's probability is
/// estimated marginally by the observed-range closed form against the
/// rest of the sample, then the vector is scaled onto the simplex.
pub fn multinomial_normalized_estimate(counts: &DiscreteCensoredCounts) -> Result<SimplexEstimate> {
    let m = counts.num_types();
    if m < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m,
        });
    }
    let n = counts.trials;
    if counts.unobserved() == 0 {
        // Fully observed: the marginal estimates are c_m / N and their sum
        // is exactly 1, so skip the normalizing division.
        let probabilities = counts
            .observed
            .iter()
            .map(|&c| c as f64 / n as f64)
            .collect();
        return Ok(SimplexEstimate {
            probabilities,
            method: EstimateMethod::Normalized,
        });
    }
    let marginals: Vec<f64> = (0..m)
        .map(|i| {
            let c = counts.observed[i];
            let cap = counts.unobserved_cap(i);
            closed_form_fhat(CountTriple::new(
                c as usize,
                cap as usize,
                (n - c - cap) as usize,
            ))
        })
        .collect();
    let total: f64 = marginals.iter().sum();
    if total == 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    Ok(SimplexEstimate {
        probabilities: marginals.iter().map(|p| p / total).collect(),
        method: EstimateMethod::Normalized,
    })
}

/// Number of ways to split `u` extras among `m` types, saturating.
fn composition_count(u: u64, m: usize) -> u128 {
    // C(u + m - 1, m - 1)
    let mut value: u128 = 1;
    for k in 1..m as u128 {
        value = value.saturating_mul(u as u128 + k);
        value /= k;
    }
    value
}

fn for_each_composition<F: FnMut(&[u64])>(total: u64, m: usize, f: &mut F) {
    let mut parts = vec![0u64; m];
    fill_composition(0, total, &mut parts, f);
}

fn fill_composition<F: FnMut(&[u64])>(idx: usize, remaining: u64, parts: &mut Vec<u64>, f: &mut F) {
    if idx + 1 == parts.len() {
        parts[idx] = remaining;
        f(parts);
        return;
    }
    for v in 0..=remaining {
        parts[idx] = v;
        fill_composition(idx + 1, remaining - v, parts, f);
    }
}

/// Log of the exact band likelihood: the probability, under `p`, that the
/// true counts dominate the observed ones.
pub fn exact_multinomial_log_likelihood(counts: &DiscreteCensoredCounts, p: &[f64]) -> Result<f64> {
    exact_multinomial_log_likelihood_capped(counts, p, DEFAULT_ENUMERATION_CAP)
}

/// As above with an explicit enumeration cap.
pub fn exact_multinomial_log_likelihood_capped(
    counts: &DiscreteCensoredCounts,
    p: &[f64],
    cap: u64,
) -> Result<f64> {
    let m = counts.num_types();
    if p.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.len(),
        });
    }
    for &v in p {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability(v));
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbability(sum));
    }
    let u = counts.unobserved();
    let terms = composition_count(u, m);
    if terms > cap as u128 {
        return Err(Error::EnumerationTooLarge { terms, cap });
    }
    let n = counts.trials as usize;
    let lnfact = ln_factorials(n);
    let ln_p: Vec<f64> = p.iter().map(|&v| v.ln()).collect();
    // Streaming log-sum-exp over compositions of the unobserved count.
    let mut max = f64::NEG_INFINITY;
    let mut acc = 0.0;
    for_each_composition(u, m, &mut |extras| {
        let mut t = lnfact[n];
        for i in 0..m {
            let ni = counts.observed[i] + extras[i];
            t -= lnfact[ni as usize];
            if ni > 0 {
                t += ni as f64 * ln_p[i];
            }
        }
        if t == f64::NEG_INFINITY {
            return;
        }
        if t <= max {
            acc += (t - max).exp();
        } else {
            acc = acc * (max - t).exp() + 1.0;
            max = t;
        }
    });
    if max == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(max + acc.ln())
}

/// The exact band likelihood on the probability scale.
pub fn exact_multinomial_likelihood(counts: &DiscreteCensoredCounts, p: &[f64]) -> Result<f64> {
    Ok(exact_multinomial_log_likelihood(counts, p)?.exp())
}

/// Maximize the exact band likelihood over the simplex by pairwise
/// coordinate ascent with seeded random restarts. Supported for up to
/// four types; the normalized approximation covers larger experiments.
pub fn exact_multinomial_mle(counts: &DiscreteCensoredCounts) -> Result<SimplexEstimate> {
    exact_multinomial_mle_seeded(counts, 2, 0)
}

/// As [`exact_multinomial_mle`] with explicit restart count and seed.
pub fn exact_multinomial_mle_seeded(
    counts: &DiscreteCensoredCounts,
    restarts: usize,
    seed: u64,
) -> Result<SimplexEstimate> {
    let m = counts.num_types();
    if !(2..=4).contains(&m) {
        return Err(Error::StructureMismatch(format!(
            "exact maximization supports 2 to 4 types, got {m}"
        )));
    }
    let n = counts.trials as f64;
    let u = counts.unobserved() as f64;
    let natural: Vec<f64> = counts
        .observed
        .iter()
        .map(|&c| (c as f64 + u / m as f64) / n)
        .collect();

    let mut best = ascend(counts, natural)?;
    let mut state = seed.wrapping_add(0x9e37_79b9);
    for _ in 0..restarts {
        let mut start: Vec<f64> = (0..m).map(|_| -uniform_open01(&mut state).ln()).collect();
        let total: f64 = start.iter().sum();
        for v in &mut start {
            *v /= total;
        }
        let candidate = ascend(counts, start)?;
        if candidate.1 > best.1 {
            best = candidate;
        }
    }
    Ok(SimplexEstimate {
        probabilities: best.0,
        method: EstimateMethod::GridMax,
    })
}

fn ascend(counts: &DiscreteCensoredCounts, mut p: Vec<f64>) -> Result<(Vec<f64>, f64)> {
    let m = p.len();
    let mut current = exact_multinomial_log_likelihood(counts, &p)?;
    for _ in 0..100 {
        let before = current;
        for i in 0..m {
            for j in i + 1..m {
                let s = p[i] + p[j];
                if s <= 0.0 {
                    continue;
                }
                let eval = |t: f64| {
                    let mut q = p.clone();
                    q[i] = t;
                    q[j] = s - t;
                    exact_multinomial_log_likelihood(counts, &q).unwrap_or(f64::NEG_INFINITY)
                };
                let t = golden_section_max(eval, 0.0, s, s * 1e-12 + 1e-15);
                let mut q = p.clone();
                q[i] = t;
                q[j] = s - t;
                let value = exact_multinomial_log_likelihood(counts, &q)?;
                if value > current {
                    current = value;
                    p = q;
                }
            }
        }
        if current - before < 1e-12 {
            break;
        }
    }
    Ok((p, current))
}

/// Log-likelihood of observed counts under fully known observation
/// probabilities: each observed type contributes `(p q)^c`, the censored
/// pool contributes `(sum (1-q) p)^u`.
pub fn known_q_log_likelihood(
    counts: &DiscreteCensoredCounts,
    q: &ObservationProbabilities,
    p: &[f64],
) -> Result<f64> {
    let m = counts.num_types();
    if q.len() != m || p.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: if q.len() != m { q.len() } else { p.len() },
        });
    }
    let lnfact = ln_factorials(counts.trials as usize);
    Ok(known_q_ll_with_table(counts, q, p, &lnfact))
}

fn known_q_ll_with_table(
    counts: &DiscreteCensoredCounts,
    q: &ObservationProbabilities,
    p: &[f64],
    lnfact: &[f64],
) -> f64 {
    let u = counts.unobserved();
    let mut ll = lnfact[counts.trials as usize] - lnfact[u as usize];
    for ((&c, &pi), &qi) in counts.observed.iter().zip(p).zip(q.values()) {
        ll -= lnfact[c as usize];
        ll += count_ln(c as f64, pi * qi);
    }
    if u > 0 {
        let pool: f64 = p
            .iter()
            .zip(q.values())
            .map(|(&pi, &qi)| (1.0 - qi) * pi)
            .sum();
        ll += count_ln(u as f64, pool);
    }
    ll
}

/// Maximum likelihood estimate of the type probabilities when every
/// observation probability is known, by expectation-maximization: the
/// censored pool is allocated proportionally to `(1-q_m) p_m` and the
/// complete-data multinomial is re-maximized, iterated to a fixed point.
pub fn known_q_mle(
    counts: &DiscreteCensoredCounts,
    q: &ObservationProbabilities,
) -> Result<SimplexEstimate> {
    Ok(known_q_mle_with_trace(counts, q)?.0)
}

/// As [`known_q_mle`], also returning the log-likelihood after each
/// iteration (starting with the initial point).
pub fn known_q_mle_with_trace(
    counts: &DiscreteCensoredCounts,
    q: &ObservationProbabilities,
) -> Result<(SimplexEstimate, Vec<f64>)> {
    let m = counts.num_types();
    if q.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: q.len(),
        });
    }
    if !q.is_all_known() {
        return Err(Error::StructureMismatch(
            "every observation probability must be known".into(),
        ));
    }
    let u = counts.unobserved();
    if u > 0 && q.values().iter().all(|&v| v == 1.0) {
        return Err(Error::InconsistentCensoring);
    }
    for i in 0..m {
        if counts.observed[i] > 0 && q.values()[i] == 0.0 {
            return Err(Error::InconsistentCensoring);
        }
    }
    let n = counts.trials as f64;
    let uf = u as f64;
    let mut p: Vec<f64> = counts
        .observed
        .iter()
        .map(|&c| (c as f64 + uf / m as f64) / n)
        .collect();
    let lnfact = ln_factorials(counts.trials as usize);
    let mut trace = vec![known_q_ll_with_table(counts, q, &p, &lnfact)];
    for _ in 0..EM_MAX_ITER {
        let mut next = vec![0.0; m];
        if u > 0 {
            let pool: f64 = (0..m).map(|i| (1.0 - q.values()[i]) * p[i]).sum();
            for i in 0..m {
                let share = if pool > 0.0 {
                    uf * (1.0 - q.values()[i]) * p[i] / pool
                } else {
                    0.0
                };
                next[i] = (counts.observed[i] as f64 + share) / n;
            }
        } else {
            for (slot, &c) in next.iter_mut().zip(&counts.observed) {
                *slot = c as f64 / n;
            }
        }
        let delta = p
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        p = next;
        trace.push(known_q_ll_with_table(counts, q, &p, &lnfact));
        if delta < EM_TOL {
            break;
        }
    }
    Ok((
        SimplexEstimate {
            probabilities: p,
            method: EstimateMethod::Em,
        },
        trace,
    ))
}

/// Result of the binomial fit with one unknown observation probability.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialKnownQFit {
    pub p: SimplexEstimate,
    pub q1: f64,
    /// Set when the likelihood is flat in `q1` (no censored trials), in
    /// which case `q1` is reported as the ridge representative 1.
    pub identifiability_warning: bool,
}

/// Log-likelihood of the four-category classification (observed or not,
/// type 1 or 2) summed over the unknown split of the censored pool.
pub fn partial_known_q_log_likelihood(
    counts: &DiscreteCensoredCounts,
    q2: f64,
    p1: f64,
    q1: f64,
) -> Result<f64> {
    if counts.num_types() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: counts.num_types(),
        });
    }
    for v in [q2, p1, q1] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability(v));
        }
    }
    let (c1, c2) = (counts.observed[0], counts.observed[1]);
    let u = counts.unobserved();
    let n = counts.trials as usize;
    let lnfact = ln_factorials(n);
    let p2 = 1.0 - p1;
    let base = lnfact[n] - lnfact[c1 as usize] - lnfact[c2 as usize]
        + count_ln(c1 as f64, p1 * q1)
        + count_ln(c2 as f64, p2 * q2);
    let hidden1 = (1.0 - q1) * p1;
    let hidden2 = (1.0 - q2) * p2;
    let terms: Vec<f64> = (0..=u)
        .map(|k| {
            -lnfact[k as usize] - lnfact[(u - k) as usize]
                + count_ln(k as f64, hidden1)
                + count_ln((u - k) as f64, hidden2)
        })
        .collect();
    Ok(base + log_sum_exp(&terms))
}

/// Fit a censored binomial experiment in which `q2` is known but `q1` is
/// not, maximizing jointly over `(p1, q1)` by a dense grid scan followed
/// by alternating golden-section refinement.
pub fn partial_known_q_mle(counts: &DiscreteCensoredCounts, q2: f64) -> Result<PartialKnownQFit> {
    if counts.num_types() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: counts.num_types(),
        });
    }
    if !(0.0..=1.0).contains(&q2) {
        return Err(Error::InvalidProbability(q2));
    }
    let (c1, c2) = (counts.observed[0], counts.observed[1]);
    let u = counts.unobserved();

    if u == 0 {
        // Nothing censored: the likelihood factorizes, p1 maximizes the
        // plain binomial factor and q1 sits on a ridge (flat when c1 = 0,
        // boundary at 1 otherwise).
        let p1 = c1 as f64 / (c1 + c2) as f64;
        return Ok(PartialKnownQFit {
            p: SimplexEstimate {
                probabilities: vec![p1, 1.0 - p1],
                method: EstimateMethod::GridMax,
            },
            q1: 1.0,
            identifiability_warning: true,
        });
    }

    let grid = 512usize;
    let step = 1.0 / grid as f64;
    let mut best = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for i in 0..=grid {
        let p1 = i as f64 * step;
        for j in 0..=grid {
            let q1 = j as f64 * step;
            let ll = partial_known_q_log_likelihood(counts, q2, p1, q1)?;
            if ll > best.2 {
                best = (p1, q1, ll);
            }
        }
    }
    let (mut p1, mut q1, mut value) = best;
    for _ in 0..4 {
        let q1_fixed = q1;
        let refined_p = golden_section_max(
            |p| {
                partial_known_q_log_likelihood(counts, q2, p, q1_fixed).unwrap_or(f64::NEG_INFINITY)
            },
            (p1 - step).max(0.0),
            (p1 + step).min(1.0),
            1e-12,
        );
        let p1_fixed = refined_p;
        let refined_q = golden_section_max(
            |q| {
                partial_known_q_log_likelihood(counts, q2, p1_fixed, q).unwrap_or(f64::NEG_INFINITY)
            },
            (q1 - step).max(0.0),
            (q1 + step).min(1.0),
            1e-12,
        );
        let candidate = partial_known_q_log_likelihood(counts, q2, refined_p, refined_q)?;
        if candidate > value {
            value = candidate;
            p1 = refined_p;
            q1 = refined_q;
        } else {
            break;
        }
    }
    Ok(PartialKnownQFit {
        p: SimplexEstimate {
            probabilities: vec![p1, 1.0 - p1],
            method: EstimateMethod::GridMax,
        },
        q1,
        identifiability_warning: false,
    })
}
