//! Discrete power-law fitting.
//!
//! For every candidate lower cutoff `k_min` the exponent is the maximum
//! likelihood estimate for the discrete distribution
//! `p(k) = k^-gamma / zeta(gamma, k_min)`, `k >= k_min`; the reported fit is
//! the cutoff whose fitted model is closest to the empirical tail in
//! Kolmogorov-Smirnov distance.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest tail considered when scanning cutoffs.
pub const MIN_TAIL: usize = 10;

const GAMMA_LO: f64 = 1.0 + 1e-6;
const GAMMA_HI: f64 = 12.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub k_min: usize,
    pub ks_distance: f64,
    /// Share of (nonzero) samples `>= k_min`.
    pub tail_fraction: f64,
    pub tail_size: usize,
    /// Asymptotic standard error `(gamma - 1) / sqrt(tail_size)`.
    pub stderr: f64,
    /// Slope of a least-squares line through the log-log histogram, if it
    /// could be computed.
    pub gamma_lsq: Option<f64>,
}

/// Hurwitz zeta `sum_{k>=0} (a + k)^-s` for `s > 1`, `a > 0`, via
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    const DIRECT: usize = 12;
    // B_2j / (2j)! is folded into the loop below.
    const BERNOULLI: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut sum = 0.0;
    for k in 0..DIRECT {
        sum += (a + k as f64).powf(-s);
    }
    let x = a + DIRECT as f64;
    let x_s = x.powf(-s);
    sum += x * x_s / (s - 1.0) + 0.5 * x_s;

    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = x_s / x;
    for (j, b) in BERNOULLI.iter().enumerate() {
        sum += b / factorial * rising * power;
        let j = (j + 1) as f64;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        power /= x * x;
    }
    sum
}

/// `sum_{k=from}^{to} k^-s` (inclusive), exact for short ranges.
fn partial_sum(s: f64, from: usize, to: usize) -> f64 {
    if to < from {
        return 0.0;
    }
    if to - from < 64 {
        (from..=to).map(|k| (k as f64).powf(-s)).sum()
    } else {
        hurwitz_zeta(s, from as f64) - hurwitz_zeta(s, (to + 1) as f64)
    }
}

struct Tail<'a> {
    values: &'a [usize],
    counts: &'a [usize],
    size: usize,
    log_sum: f64,
}

impl Tail<'_> {
    fn k_min(&self) -> usize {
        self.values[0]
    }

    fn neg_log_likelihood(&self, gamma: f64) -> f64 {
        self.size as f64 * hurwitz_zeta(gamma, self.k_min() as f64).ln() + gamma * self.log_sum
    }

    fn mle(&self) -> f64 {
        golden_min(|g| self.neg_log_likelihood(g), GAMMA_LO, GAMMA_HI, 1e-9)
    }

    fn ks_distance(&self, gamma: f64) -> f64 {
        let norm = hurwitz_zeta(gamma, self.k_min() as f64);
        let n = self.size as f64;
        let mut below = 0.0; // unnormalized model mass up to the previous value
        let mut emp = 0.0;
        let mut prev = self.k_min() - 1;
        let mut d: f64 = 0.0;
        for (&v, &c) in self.values.iter().zip(self.counts) {
            if v > prev + 1 {
                // model mass just below v, empirical CDF still at its old level
                below += partial_sum(gamma, prev + 1, v - 1);
                d = d.max((emp - below / norm).abs());
            }
            below += (v as f64).powf(-gamma);
            emp += c as f64 / n;
            d = d.max((emp - below / norm).abs());
            prev = v;
        }
        d.min(1.0)
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn unique_counts(samples: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut xs: Vec<usize> = samples.iter().copied().filter(|&x| x > 0).collect();
    xs.sort_unstable();
    let mut values = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for x in xs {
        if values.last() == Some(&x) {
            *counts.last_mut().unwrap() += 1;
        } else {
            values.push(x);
            counts.push(1);
        }
    }
    (values, counts)
}

/// Fits a discrete power law to the nonzero samples.
pub fn fit_power_law(samples: &[usize]) -> Result<PowerLawFit> {
    let (values, counts) = unique_counts(samples);
    let total: usize = counts.iter().sum();
    if total < MIN_TAIL {
        return Err(Error::DegenerateFit(format!(
            "{total} nonzero samples, at least {MIN_TAIL} required"
        )));
    }
    if values.len() < 2 {
        return Err(Error::DegenerateFit("all samples are equal".into()));
    }

    // suffix sums over unique values
    let u = values.len();
    let mut tail_size = vec![0usize; u + 1];
    let mut tail_log = vec![0.0f64; u + 1];
    for i in (0..u).rev() {
        tail_size[i] = tail_size[i + 1] + counts[i];
        tail_log[i] = tail_log[i + 1] + counts[i] as f64 * (values[i] as f64).ln();
    }

    let mut best: Option<(f64, usize, f64)> = None; // (ks, index, gamma)
    for i in 0..u - 1 {
        if tail_size[i] < MIN_TAIL {
            break;
        }
        let tail = Tail {
            values: &values[i..],
            counts: &counts[i..],
            size: tail_size[i],
            log_sum: tail_log[i],
        };
        let gamma = tail.mle();
        let ks = tail.ks_distance(gamma);
        if best.is_none_or(|(b, _, _)| ks < b) {
            best = Some((ks, i, gamma));
        }
    }
    let (ks, i, gamma) = best.ok_or_else(|| {
        Error::DegenerateFit("no cutoff leaves a tail with two distinct values".into())
    })?;
    Ok(PowerLawFit {
        gamma,
        k_min: values[i],
        ks_distance: ks,
        tail_fraction: tail_size[i] as f64 / total as f64,
        tail_size: tail_size[i],
        stderr: (gamma - 1.0) / (tail_size[i] as f64).sqrt(),
        gamma_lsq: fit_power_law_lsq(samples).ok(),
    })
}

/// Exponent from an ordinary least-squares line through
/// `(ln k, ln p_k)` over the nonzero histogram bins.
pub fn fit_power_law_lsq(samples: &[usize]) -> Result<f64> {
    let (values, counts) = unique_counts(samples);
    if values.len() < 2 {
        return Err(Error::DegenerateFit("need two distinct degrees".into()));
    }
    let total: usize = counts.iter().sum();
    let pts: Vec<(f64, f64)> = values
        .iter()
        .zip(&counts)
        .map(|(&k, &c)| ((k as f64).ln(), (c as f64 / total as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(-sxy / sxx)
}
