//! Hermite polynomials and the correlation kernels of the edge processes.
//!
//! Closed-form kernels live here; kernels defined by double contour
//! integrals are evaluated as residue sums in [`contour`].

pub mod contour;
pub mod residue;

pub use contour::{conditioned_kernel, finite_n_kernel, limiting_kernel_residue, ResidueKernel};

use crate::dd::Dd;
use crate::error::{domain, Result};
use crate::tableaux::StaircaseFamily;
use serde::{Deserialize, Serialize};

/// Physicist's Hermite polynomial `H_j(x)` by the three-term recurrence.
pub fn hermite(j: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if j == 0 {
        return h0;
    }
    for m in 1..j {
        let h2 = 2.0 * x * h1 - 2.0 * m as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// All of `H_0(x), ..., H_max(x)`.
pub fn hermite_all(max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(1.0);
    if max >= 1 {
        out.push(2.0 * x);
    }
    for m in 1..max {
        out.push(2.0 * x * out[m] - 2.0 * m as f64 * out[m - 1]);
    }
    out
}

/// Half-line norm `N_j = j! 2^{j-1} sqrt(pi)`, which is
/// `∫_0^∞ H_j(x)^2 e^{-x^2} dx`.
pub fn half_line_norm(j: usize) -> f64 {
    let fact: f64 = (1..=j).map(|m| m as f64).product();
    fact * 2f64.powi(j as i32 - 1) * std::f64::consts::PI.sqrt()
}

/// `Σ_{ℓ<k} H_{2ℓ}(u1) H_{2ℓ}(u2) / N_{2ℓ}`.
fn even_hermite_sum(k: usize, u1: f64, u2: f64) -> f64 {
    let h1 = hermite_all(2 * k, u1);
    let h2 = hermite_all(2 * k, u2);
    (0..k)
        .map(|l| h1[2 * l] * h2[2 * l] / half_line_norm(2 * l))
        .sum()
}

/// The rank-`k` kernel `e^{-(u1²+u2²)/2} Σ_{ℓ<k} H_{2ℓ}(u1)H_{2ℓ}(u2) /
/// (sqrt(pi) (2ℓ)! 2^{2ℓ-1})` of the smallest positive eigenvalue.
pub fn kernel_k(k: usize, u1: f64, u2: f64) -> Result<f64> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    Ok((-(u1 * u1 + u2 * u2) / 2.0).exp() * even_hermite_sum(k, u1, u2))
}

/// Corners kernel of the anti-symmetric GUE on levels `x, y >= 2`.
///
/// For `x >= y` the sum `e^{-u^2} Σ_{l=1}^{⌊y/2⌋} H_{x-2l}(u) H_{y-2l}(v) /
/// N_{y-2l}` is finite. For `x < y` the series over `l = 0, -1, ...` is
/// truncated after `trunc + 1` terms; its convergence is not established, so
/// nothing downstream relies on that branch.
///
/// `N_j` is the half-line norm: the reference measure lives on `[0, ∞)`.
pub fn corners_kernel(x: usize, u: f64, y: usize, v: f64, trunc: usize) -> Result<f64> {
    if x < 2 || y < 2 {
        return domain("levels must be at least 2");
    }
    let weight = (-u * u).exp();
    if x >= y {
        let s: f64 = (1..=y / 2)
            .map(|l| hermite(x - 2 * l, u) * hermite(y - 2 * l, v) / half_line_norm(y - 2 * l))
            .sum();
        Ok(weight * s)
    } else {
        let s: f64 = (0..=trunc)
            .map(|m| hermite(x + 2 * m, u) * hermite(y + 2 * m, v) / half_line_norm(y + 2 * m))
            .sum();
        Ok(-weight * s)
    }
}

/// `Γ(j + 1/2 - k)` for `0 <= j < k`, i.e. `Γ(1/2 - m)` with `m = k - j`.
fn gamma_neg_half(m: usize) -> Dd {
    // Γ(1/2 - m) = (-4)^m m! sqrt(pi) / (2m)!.
    let mut v = Dd::SQRT_PI;
    for r in 1..=m {
        v = v * Dd::from(-4.0 * r as f64) / Dd::from(((2 * r - 1) * (2 * r)) as f64);
    }
    v
}

/// The double series for the level-`2k` diagonal block of the limiting
/// kernel, truncated at `i <= i_max`. Returns the value and a bound on the
/// omitted tail.
pub fn limiting_kernel_series_with_tail(
    k: usize,
    u1: f64,
    u2: f64,
    i_max: usize,
) -> Result<(f64, f64)> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    let a: Vec<Dd> = (0..k)
        .map(|j| {
            let fact_2k_2j_1: f64 = (1..=(2 * k - 2 * j - 1)).map(|m| m as f64).product();
            let fact_2j: f64 = (1..=(2 * j)).map(|m| m as f64).product();
            Dd::from(u1).powi(2 * j as u32)
                / (Dd::from(fact_2k_2j_1) * gamma_neg_half(k - j) * Dd::from(fact_2j))
        })
        .collect();
    let u2sq = Dd::from(u2) * Dd::from(u2);
    let term = |i: usize, pow: Dd| -> Dd {
        let mut odd = Dd::ONE;
        for m in 0..k {
            odd = odd * Dd::from((2 * i + 2 * m + 1) as f64);
        }
        let inner: Dd = (0..k)
            .map(|j| a[j] / Dd::from((2 * j + 2 * i + 1) as f64))
            .sum();
        let sign = if (i + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        Dd::from(sign) * pow * odd * inner
    };
    // pow_i = u2^{2i} / i!.
    let mut pow = Dd::ONE;
    let mut total = Dd::ZERO;
    for i in 0..=i_max {
        if i > 0 {
            pow = pow * u2sq / Dd::from(i as f64);
        }
        total = total + term(i, pow);
    }
    let next_pow = pow * u2sq / Dd::from((i_max + 1) as f64);
    let next = term(i_max + 1, next_pow).to_f64().abs();
    // Successive ratios are below u2^2 (1 + 2k/i) / i, so a geometric bound
    // applies once that drops under one half.
    let ratio = u2 * u2 * (1.0 + 2.0 * k as f64 / (i_max + 2) as f64) / (i_max + 2) as f64;
    let tail = if ratio < 0.5 {
        next / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    let scale = 2f64.powi(k as i32 + 1);
    Ok((scale * total.to_f64(), scale * tail))
}

/// The double series for the level-`2k` diagonal block of the limiting kernel.
pub fn limiting_kernel_series(k: usize, u1: f64, u2: f64, i_max: usize) -> Result<f64> {
    limiting_kernel_series_with_tail(k, u1, u2, i_max).map(|(v, _)| v)
}

/// Hermite form `e^{-u2²} Σ_{l<k} H_{2l}(u1) H_{2l}(u2) / (2^{2l-1} (2l)! sqrt(pi))`
/// of the same block.
pub fn limiting_kernel_hermite(k: usize, u1: f64, u2: f64) -> Result<f64> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    Ok((-u2 * u2).exp() * even_hermite_sum(k, u1, u2))
}

/// The kernel families exposed by the crate, with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum KernelFamily {
    /// The rank-`k` kernel of the smallest positive eigenvalue (level `2k`).
    KernelK { k: usize },
    /// The anti-symmetric GUE corners kernel.
    Corners { trunc: usize },
    /// Level-`2k` block of the limiting kernel as a double series.
    LimitingSeries { k: usize, i_max: usize },
    /// Level-`2k` block of the limiting kernel in Hermite form.
    LimitingHermite { k: usize },
    /// The limiting kernel by residues, all levels.
    LimitingResidue { trunc: usize },
    /// The conditioned limiting kernel by residues.
    Conditioned { k: usize, trunc: usize },
    /// The finite-`n` kernel of `Δ_n` or `Δ_n ∖ (n-k, k)`.
    FiniteN { n: usize, minus_k: Option<usize> },
}

impl KernelFamily {
    /// Evaluates the kernel at `(x1, u1; x2, u2)`. Single-level families
    /// ignore the levels.
    pub fn eval(&self, x1: usize, u1: f64, x2: usize, u2: f64) -> Result<f64> {
        match *self {
            KernelFamily::KernelK { k } => kernel_k(k, u1, u2),
            KernelFamily::Corners { trunc } => corners_kernel(x1, u1, x2, u2, trunc),
            KernelFamily::LimitingSeries { k, i_max } => limiting_kernel_series(k, u1, u2, i_max),
            KernelFamily::LimitingHermite { k } => limiting_kernel_hermite(k, u1, u2),
            KernelFamily::LimitingResidue { trunc } => {
                limiting_kernel_residue(x1, u1, x2, u2, trunc)
            }
            KernelFamily::Conditioned { k, trunc } => conditioned_kernel(k, x1, u1, x2, u2, trunc),
            KernelFamily::FiniteN { n, minus_k } => {
                let family = match minus_k {
                    None => StaircaseFamily::Full { n },
                    Some(k) => StaircaseFamily::MinusCorner { n, k },
                };
                finite_n_kernel(family, x1, u1, x2, u2)
            }
        }
    }

    /// Name used in file metadata.
    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::KernelK { .. } => "kernel_k",
            KernelFamily::Corners { .. } => "corners",
            KernelFamily::LimitingSeries { .. } => "limiting_series",
            KernelFamily::LimitingHermite { .. } => "limiting_hermite",
            KernelFamily::LimitingResidue { .. } => "limiting_residue",
            KernelFamily::Conditioned { .. } => "conditioned",
            KernelFamily::FiniteN { .. } => "finite_n",
        }
    }
}
