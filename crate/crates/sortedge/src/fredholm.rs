//! Law of the smallest positive eigenvalue as a finite-rank Fredholm
//! determinant, and the two limiting spacing densities.
//!
//! The kernel of level `2k` is `Σ_{a<k} φ_a(u1) φ_a(u2)` with `φ_a` the
//! normalised even Hermite functions on `[0, ∞)`, so
//! `P(T > t) = det(I - G(t))` with the `k × k` Gram matrix
//! `G_ab(t) = ∫_0^t φ_a φ_b`.

use crate::error::{domain, Error, Result};
use crate::kernels::{half_line_norm, hermite_all};
use crate::quad::adaptive;
use crate::spacings::double_factorial_ratio;
use nalgebra::{DMatrix, DVector};

/// Relative tolerance of the Gram-matrix quadratures.
pub const QUAD_REL_TOL: f64 = 1e-12;

/// Step of the central difference used for the second derivative.
pub const DIFF_STEP: f64 = 1e-4;

/// Beyond this point the Gram matrix is taken through its tail
/// `I - G(t) = ∫_t^∞ φ φᵀ`, which keeps small determinants accurate.
const TAIL_SWITCH: f64 = 1.0;

/// Length of the integration range standing in for `[t, ∞)`.
const TAIL_LENGTH: f64 = 12.0;

/// `φ_0(u), ..., φ_{k-1}(u)`.
pub fn phi(k: usize, u: f64) -> Vec<f64> {
    let h = hermite_all(2 * k, u);
    let w = (-u * u / 2.0).exp();
    (0..k)
        .map(|a| w * h[2 * a] / half_line_norm(2 * a).sqrt())
        .collect()
}

/// The Gram matrix at `t` together with `I - G(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramState {
    /// Rank.
    pub k: usize,
    /// Upper integration limit.
    pub t: f64,
    /// `G(t)`.
    pub g: DMatrix<f64>,
    /// `I - G(t)`, computed directly from the tail when `t` is large.
    pub complement: DMatrix<f64>,
}

fn integrate_outer(k: usize, a: f64, b: f64, abs_tol: f64) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(k, k);
    for r in 0..k {
        for c in r..k {
            // Split at the midpoint so each half sees a simpler integrand.
            let mid = 0.5 * (a + b);
            let f = |u: f64| {
                let p = phi(k, u);
                p[r] * p[c]
            };
            let v = adaptive(f, a, mid, QUAD_REL_TOL, abs_tol)?
                + adaptive(f, mid, b, QUAD_REL_TOL, abs_tol)?;
            m[(r, c)] = v;
            m[(c, r)] = v;
        }
    }
    Ok(m)
}

/// Builds the Gram matrix of rank `k` at `t >= 0`.
pub fn gram_state(k: usize, t: f64) -> Result<GramState> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    if !t.is_finite() || t < 0.0 {
        return domain(format!("t must be finite and non-negative, got {t}"));
    }
    let eye = DMatrix::<f64>::identity(k, k);
    if t <= TAIL_SWITCH {
        let g = if t == 0.0 {
            DMatrix::zeros(k, k)
        } else {
            integrate_outer(k, 0.0, t, 1e-17)?
        };
        let complement = &eye - &g;
        Ok(GramState {
            k,
            t,
            g,
            complement,
        })
    } else {
        let complement = integrate_outer(k, t, t + TAIL_LENGTH, 1e-300)?;
        let g = &eye - &complement;
        Ok(GramState {
            k,
            t,
            g,
            complement,
        })
    }
}

/// `P(T_FS(k) > t) = det(I - G(t))`.
pub fn survival_tfs(k: usize, t: f64) -> Result<f64> {
    Ok(gram_state(k, t)?.complement.determinant())
}

/// `F(t)` and `F'(t) = -F(t) φ(t)ᵀ (I - G(t))^{-1} φ(t)`.
pub fn survival_and_derivative(k: usize, t: f64) -> Result<(f64, f64)> {
    let st = gram_state(k, t)?;
    let f = st.complement.determinant();
    let p = DVector::from_vec(phi(k, t));
    let chol =
        st.complement.clone().cholesky().ok_or_else(|| {
            Error::Numeric(format!("I - G({t}) is numerically singular for k = {k}"))
        })?;
    let x = chol.solve(&p);
    Ok((f, -f * p.dot(&x)))
}

/// `F'(t)`.
pub fn survival_derivative(k: usize, t: f64) -> Result<f64> {
    survival_and_derivative(k, t).map(|(_, d)| d)
}

/// `F''(x)` by a Richardson-extrapolated central difference of `F'`, or a
/// second-order one-sided difference at `x = 0`.
pub fn survival_second_derivative(k: usize, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("x must be finite and non-negative, got {x}"));
    }
    if x == 0.0 {
        let h = DIFF_STEP;
        let d = |t: f64| survival_derivative(k, t);
        return Ok((-3.0 * d(0.0)? + 4.0 * d(h)? - d(2.0 * h)?) / (2.0 * h));
    }
    let h = DIFF_STEP.min(x / 4.0);
    let d = |h: f64| -> Result<f64> {
        Ok((survival_derivative(k, x + h)? - survival_derivative(k, x - h)?) / (2.0 * h))
    };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `(sqrt(pi)/2) (2k-2)!! / (2k-1)!!`.
pub fn ghat_prefactor(k: usize) -> f64 {
    0.5 * std::f64::consts::PI.sqrt() / double_factorial_ratio(k)
}

/// Limiting density of the scaled spacing `Sp`: `g_k(x) = x F''(x)`.
pub fn density_g(k: usize, x: f64) -> Result<f64> {
    Ok(x * survival_second_derivative(k, x)?)
}

/// Limiting density of the scaled conditional spacing: `c_k F''(x)`.
pub fn density_ghat(k: usize, x: f64) -> Result<f64> {
    Ok(ghat_prefactor(k) * survival_second_derivative(k, x)?)
}

/// `∫_a^b g_k = [x F'(x) - F(x)]_a^b`.
pub fn g_mass(k: usize, a: f64, b: f64) -> Result<f64> {
    let edge = |x: f64| -> Result<f64> {
        if x.is_infinite() {
            return Ok(0.0);
        }
        let (f, d) = survival_and_derivative(k, x)?;
        Ok(x * d - f)
    };
    Ok(edge(b)? - edge(a)?)
}

/// `∫_a^b ĝ_k = c_k [F'(x)]_a^b`.
pub fn ghat_mass(k: usize, a: f64, b: f64) -> Result<f64> {
    let edge = |x: f64| -> Result<f64> {
        if x.is_infinite() {
            Ok(0.0)
        } else {
            survival_derivative(k, x)
        }
    };
    Ok(ghat_prefactor(k) * (edge(b)? - edge(a)?))
}

/// `P(T_FS(k) <= t)`.
pub fn cdf_tfs(k: usize, t: f64) -> Result<f64> {
    Ok(1.0 - survival_tfs(k, t)?)
}

/// `F` and `F'` tabulated on a uniform grid, interpolated by cubic Hermite
/// polynomials. With the default step the interpolation error is far below
/// the quadrature tolerance, and evaluation is cheap enough for KS tests
/// on large samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalTable {
    k: usize,
    step: f64,
    values: Vec<(f64, f64)>,
}

impl SurvivalTable {
    /// Default grid step.
    pub const STEP: f64 = 0.01;

    /// Tabulates until `F` drops below 1e-15 or `t` reaches 12.
    pub fn new(k: usize, step: f64) -> Result<SurvivalTable> {
        if step.is_nan() || step <= 0.0 {
            return domain("grid step must be positive");
        }
        let mut values = Vec::new();
        let mut idx = 0usize;
        loop {
            let t = idx as f64 * step;
            let (f, d) = survival_and_derivative(k, t)?;
            values.push((f, d));
            if f < 1e-15 || t >= 12.0 {
                break;
            }
            idx += 1;
        }
        Ok(SurvivalTable { k, step, values })
    }

    /// Rank `k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Last tabulated point; `F` is taken as zero beyond it.
    pub fn t_max(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.step
    }

    /// `P(T_FS(k) > t)`.
    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        let pos = t / self.step;
        let i = pos.floor() as usize;
        if i + 1 >= self.values.len() {
            return 0.0;
        }
        let s = pos - i as f64;
        let ((f0, d0), (f1, d1)) = (self.values[i], self.values[i + 1]);
        let h = self.step;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * f0
            + (s3 - 2.0 * s2 + s) * h * d0
            + (-2.0 * s3 + 3.0 * s2) * f1
            + (s3 - s2) * h * d1
    }

    /// `P(T_FS(k) <= t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        1.0 - self.survival(t)
    }

    /// `E[T_FS(k)] = ∫_0^∞ F` by the trapezoid rule with the endpoint
    /// derivative correction.
    pub fn mean(&self) -> f64 {
        let h = self.step;
        let m = self.values.len();
        let f: f64 = self.values.iter().map(|v| v.0).sum::<f64>()
            - 0.5 * (self.values[0].0 + self.values[m - 1].0);
        h * f + h * h / 12.0 * (self.values[0].1 - self.values[m - 1].1)
    }
}
