//! Anti-symmetric GUE matrices and the spectra of their nested corners.
//!
//! A matrix `M = i·a` with `a` real anti-symmetric has eigenvalues `±σ`
//! where `σ^2` runs over the eigenvalues of the positive semi-definite
//! matrix `-a^2 = aᵀa`, each appearing twice. Everything is done in this
//! real representation.

use crate::error::{domain, Error, Result};
use crate::exec::Rng;
use crate::quad::{adaptive, gl20};
use crate::stats::erf;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// A real anti-symmetric matrix `a = (Y - Yᵀ)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymRealMatrix {
    a: DMatrix<f64>,
}

impl AntisymRealMatrix {
    /// Wraps a matrix, checking exact anti-symmetry.
    pub fn new(a: DMatrix<f64>) -> Result<AntisymRealMatrix> {
        if !a.is_square() {
            return domain("matrix is not square");
        }
        let d = a.nrows();
        for i in 0..d {
            for j in 0..d {
                if a[(i, j)] != -a[(j, i)] {
                    return domain(format!("entries ({i},{j}) and ({j},{i}) are not opposite"));
                }
            }
        }
        Ok(AntisymRealMatrix { a })
    }

    /// Dimension `ℓ`.
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// The real matrix `a`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    /// The top-left `l × l` corner.
    pub fn corner(&self, l: usize) -> AntisymRealMatrix {
        AntisymRealMatrix {
            a: self.a.view((0, 0), (l, l)).into_owned(),
        }
    }
}

/// Samples an `ℓ × ℓ` matrix from i.i.d. standard Gaussians `Y`.
pub fn sample_antisym(l: usize, rng: &mut Rng) -> Result<AntisymRealMatrix> {
    if l < 1 {
        return domain("dimension must be at least 1");
    }
    let mut a = DMatrix::<f64>::zeros(l, l);
    // Entries are drawn row by row so that corners of a larger sample have
    // the same law as a direct sample of the smaller size.
    for i in 0..l {
        for j in 0..i {
            let y_ij: f64 = rng.sample(StandardNormal);
            let y_ji: f64 = rng.sample(StandardNormal);
            let v = 0.5 * (y_ij - y_ji);
            a[(i, j)] = v;
            a[(j, i)] = -v;
        }
    }
    Ok(AntisymRealMatrix { a })
}

/// The `⌊ℓ/2⌋` positive eigenvalues of `i·a`, in descending order.
pub fn positive_spectrum(m: &AntisymRealMatrix) -> Result<Vec<f64>> {
    let l = m.dim();
    let half = l / 2;
    if half == 0 {
        return Ok(Vec::new());
    }
    let s = m.a.transpose() * &m.a;
    let eig = SymmetricEigen::try_new(s, f64::EPSILON, 10_000).ok_or_else(|| {
        Error::Numeric(format!(
            "symmetric eigensolver did not converge for ℓ = {l}"
        ))
    })?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite eigenvalue".into()));
    }
    let out: Vec<f64> = (0..half).map(|p| ev[2 * p].max(0.0).sqrt()).collect();
    debug_assert!((0..half).all(|p| {
        let (x, y) = (ev[2 * p], ev[2 * p + 1]);
        (x - y).abs() <= 1e-6 * x.abs().max(1.0)
    }));
    Ok(out)
}

/// Positive spectra of the corners `2..=L` of one matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornersConfig {
    /// `levels[l - 2]` holds the descending positive spectrum of corner `l`.
    pub levels: Vec<Vec<f64>>,
}

impl CornersConfig {
    /// Descending positive spectrum of corner `l`.
    pub fn level(&self, l: usize) -> &[f64] {
        &self.levels[l - 2]
    }

    /// Largest level `L`.
    pub fn max_level(&self) -> usize {
        self.levels.len() + 1
    }

    /// Checks `λ^{l+1}_{j+1} <= λ^l_j <= λ^{l+1}_j` with slack `tol`,
    /// where odd levels carry an implicit zero.
    pub fn is_interlacing(&self, tol: f64) -> bool {
        (2..self.max_level()).all(|l| {
            let lower = self.level(l);
            let upper = self.level(l + 1);
            lower.iter().enumerate().all(|(j, &x)| {
                let above = upper[j];
                let below = upper.get(j + 1).copied().unwrap_or(0.0);
                below <= x + tol && x <= above + tol
            })
        })
    }
}

/// Spectra of all corners `2..=L` of an `L × L` matrix.
pub fn corners_config(m: &AntisymRealMatrix) -> Result<CornersConfig> {
    let top = m.dim();
    if top < 2 {
        return domain("corners need L >= 2");
    }
    let levels = (2..=top)
        .map(|l| positive_spectrum(&m.corner(l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CornersConfig { levels })
}

/// Samples a fresh corners configuration up to level `L`.
pub fn sample_corners(top: usize, rng: &mut Rng) -> Result<CornersConfig> {
    corners_config(&sample_antisym(top, rng)?)
}

/// Smallest positive eigenvalue of a fresh `2k × 2k` sample.
pub fn sample_tfs(k: usize, rng: &mut Rng) -> Result<f64> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    let spec = positive_spectrum(&sample_antisym(2 * k, rng)?)?;
    Ok(spec[k - 1])
}

fn check_values(values: &[f64], l: usize) -> Result<()> {
    if values.len() != l / 2 {
        return domain(format!(
            "expected {} values for ℓ = {l}, got {}",
            l / 2,
            values.len()
        ));
    }
    if values.iter().any(|&v| v <= 0.0) || values.windows(2).any(|w| w[0] < w[1]) {
        return domain("values must be positive and descending");
    }
    Ok(())
}

/// `Π_{i<j} (u_i^2 - u_j^2)`.
fn squared_vandermonde(values: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            p *= values[i] * values[i] - values[j] * values[j];
        }
    }
    p
}

/// `Π_{i<j} (u_i^2 - u_j^2) Π e^{-u_i^2}`, with an extra `Π u_i` for odd `ℓ`,
/// at the descending positive values `u` of corner `ℓ`.
///
/// Together with the uniform law of the lower corners given corner `ℓ`, this
/// is the density of the whole interlacing array of levels `2..=ℓ` at any
/// array whose top level is `u`. The law of corner `ℓ` alone is
/// [`marginal_density_unnormalized`].
pub fn joint_density_unnormalized(values: &[f64], l: usize) -> Result<f64> {
    check_values(values, l)?;
    let mut p = squared_vandermonde(values);
    for &v in values {
        p *= (-v * v).exp();
        if l % 2 == 1 {
            p *= v;
        }
    }
    Ok(p)
}

/// Volume of the interlacing arrays of levels `2..ℓ-1` below the top level
/// `u`, up to a constant depending on `ℓ` only: `Π_{i<j}(u_i^2 - u_j^2)`,
/// times `Π u_i` for odd `ℓ`.
fn lower_volume(values: &[f64], l: usize) -> f64 {
    let mut v = squared_vandermonde(values);
    if l % 2 == 1 {
        v *= values.iter().product::<f64>();
    }
    v
}

/// Unnormalised density of the positive spectrum of corner `ℓ` alone:
/// [`joint_density_unnormalized`] times the volume of the lower levels,
/// i.e. `Π_{i<j}(u_i^2 - u_j^2)^2 Π e^{-u_i^2}` with `Π u_i^2` for odd `ℓ`.
pub fn marginal_density_unnormalized(values: &[f64], l: usize) -> Result<f64> {
    Ok(joint_density_unnormalized(values, l)? * lower_volume(values, l))
}

/// `∫_a^b x^{2p} e^{-x^2} dx` for `p <= 2`.
fn gauss_moment(p: usize, a: f64, b: f64) -> f64 {
    let m0 = 0.5 * std::f64::consts::PI.sqrt() * (erf(b) - erf(a));
    // ∫ x^{2p} e^{-x^2} = [-x^{2p-1} e^{-x^2} / 2] + (2p-1)/2 ∫ x^{2p-2} e^{-x^2}.
    let edge = |q: i32| 0.5 * (a.powi(q) * (-a * a).exp() - b.powi(q) * (-b * b).exp());
    let m2 = edge(1) + 0.5 * m0;
    match p {
        0 => m0,
        1 => m2,
        2 => edge(3) + 1.5 * m2,
        _ => unreachable!("only moments up to the fourth are used"),
    }
}

/// `∫ joint_density_unnormalized` over the positive spectra of corner `ℓ`,
/// for `ℓ <= 5`, by quadrature.
pub fn normalization_integral(l: usize) -> Result<f64> {
    match l {
        2 => Ok(0.5 * std::f64::consts::PI.sqrt()),
        3 => Ok(0.5),
        4 | 5 => adaptive(
            |u1| {
                let inner = if l == 4 {
                    u1 * u1 * gauss_moment(0, 0.0, u1) - gauss_moment(1, 0.0, u1)
                } else {
                    gl20().integrate(0.0, u1, |u2| (u1 * u1 - u2 * u2) * u2 * (-u2 * u2).exp())
                };
                let w = if l == 5 { u1 } else { 1.0 };
                w * (-u1 * u1).exp() * inner
            },
            0.0,
            12.0,
            1e-13,
            1e-16,
        ),
        _ => Err(Error::Resource(format!(
            "normalisation by quadrature is implemented for ℓ <= 5, got {l}"
        ))),
    }
}

/// `∫ marginal_density_unnormalized(·, 4)` over `u1 > u2 > 0`, which is
/// `m4 m0 - m2^2 = pi / 8` in terms of the half-line Gaussian moments.
fn l4_marginal_total() -> f64 {
    std::f64::consts::PI / 8.0
}

/// Probabilities of the law of the `ℓ = 4` positive spectrum on a
/// `bins × bins` grid of `[0, upper)^2` in the coordinates `(u1, u2)` with
/// `u1 > u2`.
///
/// Entry `[i][j]` covers `u1` in bin `i` and `u2` in bin `j`; it vanishes
/// for `j > i`. Diagonal cells integrate over the triangle `u2 < u1`.
pub fn l4_cell_probabilities(bins: usize, upper: f64) -> Result<Vec<Vec<f64>>> {
    if bins == 0 || upper.is_nan() || upper <= 0.0 {
        return domain("need at least one bin and a positive upper edge");
    }
    let z = l4_marginal_total();
    let h = upper / bins as f64;
    let edge = |i: usize| i as f64 * h;
    // (u1^2 - u2^2)^2 = u1^4 - 2 u1^2 u2^2 + u2^4 separates over rectangles.
    let rect = |a1: f64, b1: f64, a2: f64, b2: f64| {
        gauss_moment(2, a1, b1) * gauss_moment(0, a2, b2)
            - 2.0 * gauss_moment(1, a1, b1) * gauss_moment(1, a2, b2)
            + gauss_moment(0, a1, b1) * gauss_moment(2, a2, b2)
    };
    let mut out = vec![vec![0.0; bins]; bins];
    for (i, row) in out.iter_mut().enumerate() {
        let (a1, b1) = (edge(i), edge(i + 1));
        for (j, cell) in row.iter_mut().enumerate().take(i) {
            *cell = rect(a1, b1, edge(j), edge(j + 1)) / z;
        }
        let diag = gl20().integrate(a1, b1, |u1| {
            let u1sq = u1 * u1;
            (-u1sq).exp()
                * (u1sq * u1sq * gauss_moment(0, a1, u1) - 2.0 * u1sq * gauss_moment(1, a1, u1)
                    + gauss_moment(2, a1, u1))
        });
        row[i] = diag / z;
    }
    Ok(out)
}
