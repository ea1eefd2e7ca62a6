//! Goodness-of-fit statistics used by the Monte Carlo experiments.

use crate::exec::Rng;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Natural logarithm of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Regularised upper incomplete gamma function `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let log_prefactor = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..10_000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        1.0 - sum * log_prefactor.exp()
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * log_prefactor.exp()
    }
}

/// Upper tail probability of the chi-square distribution with `dof` degrees
/// of freedom.
pub fn chi_square_sf(stat: f64, dof: usize) -> f64 {
    gamma_q(dof as f64 / 2.0, stat / 2.0)
}

/// One-sample Kolmogorov–Smirnov distance between `samples` and `cdf`.
///
/// `samples` must be sorted ascending. Ties are handled exactly, so the
/// statistic is also correct for lattice-valued data.
pub fn ks_one_sample_sorted<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> f64 {
    let m = samples.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < samples.len() {
        let x = samples[i];
        let mut j = i;
        while j < samples.len() && samples[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d
            .max((j as f64 / m - f).abs())
            .max((f - i as f64 / m).abs());
        i = j;
    }
    d
}

/// Two-sample Kolmogorov–Smirnov distance; both inputs sorted ascending.
pub fn ks_two_sample_sorted(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Sorts a copy of `v` ascending (NaNs are a caller bug and panic).
pub fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
    s
}

/// A distance statistic together with its bootstrap standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Statistic {
    /// The statistic on the full sample.
    pub value: f64,
    /// Standard deviation of the statistic over bootstrap resamples.
    pub bootstrap_se: f64,
    /// Number of observations.
    pub samples: usize,
}

/// Bootstrap standard error of `stat` using `reps` resamples.
pub fn bootstrap_se<F: FnMut(&[f64]) -> f64>(
    data: &[f64],
    reps: usize,
    rng: &mut Rng,
    mut stat: F,
) -> f64 {
    if data.is_empty() || reps < 2 {
        return 0.0;
    }
    let mut buf = vec![0.0; data.len()];
    let values: Vec<f64> = (0..reps)
        .map(|_| {
            for slot in buf.iter_mut() {
                *slot = data[rng.random_range(0..data.len())];
            }
            buf.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
            stat(&buf)
        })
        .collect();
    let mean = values.iter().sum::<f64>() / reps as f64;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt()
}

/// Histogram of `samples` on `bins` equal cells of `[0, upper)` plus one
/// overflow cell; returns relative frequencies.
pub fn histogram_with_overflow(samples: &[f64], bins: usize, upper: f64) -> Vec<f64> {
    let mut counts = vec![0usize; bins + 1];
    for &x in samples {
        let b = if x >= upper || !x.is_finite() {
            bins
        } else {
            ((x / upper * bins as f64) as usize).min(bins - 1)
        };
        counts[b] += 1;
    }
    let m = samples.len().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / m).collect()
}

/// Total-variation distance between two probability vectors.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Pearson chi-square test of observed counts against expected counts.
///
/// Cells whose expectation falls below `min_expected` are pooled into one
/// cell. Returns `(statistic, degrees of freedom, p-value)`.
pub fn chi_square_test(observed: &[f64], expected: &[f64], min_expected: f64) -> (f64, usize, f64) {
    let mut stat = 0.0;
    let mut cells = 0usize;
    let (mut pool_o, mut pool_e) = (0.0, 0.0);
    for (&o, &e) in observed.iter().zip(expected) {
        if e < min_expected {
            pool_o += o;
            pool_e += e;
        } else {
            stat += (o - e).powi(2) / e;
            cells += 1;
        }
    }
    if pool_e > 0.0 {
        stat += (pool_o - pool_e).powi(2) / pool_e;
        cells += 1;
    }
    let dof = cells.saturating_sub(1).max(1);
    (stat, dof, chi_square_sf(stat, dof))
}
