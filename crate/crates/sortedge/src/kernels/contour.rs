//! Kernels given by double contour integrals, evaluated as residue sums.
//!
//! The `w`-integral is done first, over the integer poles in `[0, x1)`; the
//! cross factor `1/(w + z + x2 - x1 + 1)` contributes nothing at that stage.
//! With `w = j` fixed, the cross factor has a pole at `z = x1 - x2 - 1 - j`,
//! which is picked up by the `z`-integral exactly when it is one of the
//! enclosed integers. Every residue is then a polynomial coefficient in
//! `u1^j u2^z`, so a kernel for a fixed pair of levels is stored as a table
//! of coefficients and evaluated cheaply at many `(u1, u2)`.

use super::residue::{gamma_half, linear, residue, rgamma_half, Local, Scaled};
use crate::dd::Dd;
use crate::error::{domain, Result};
use crate::tableaux::{make_staircase, make_staircase_minus, StaircaseFamily};

/// Default cap on the number of `z`-residues of the limiting kernels.
pub const DEFAULT_TRUNC: usize = 4000;

/// Largest `u` for which a limiting kernel table is built by default. The
/// kernels are below 1e-12 beyond this point, and the largest term of the
/// alternating `z`-series is about `e^{u^2}`, so double-double cancellation
/// still leaves an absolute error near 1e-16 here.
pub const DEFAULT_U_MAX: f64 = 6.0;

/// Base-2 logarithm of the absolute size below which `z`-terms count as
/// negligible.
const Z_TOL_LOG2: f64 = -60.0;

/// A kernel on a fixed pair of levels as `s·[ind + Σ c_{jz} (s u1)^j (s u2)^z]`
/// where `s = n^{-1/2}` for finite `n` and `s = 1` in the limit.
#[derive(Debug, Clone)]
pub struct ResidueKernel {
    x1: usize,
    x2: usize,
    scale: f64,
    terms: Vec<(u32, u32, Scaled)>,
    u_max: f64,
}

impl ResidueKernel {
    /// Levels `(x1, x2)`.
    pub fn levels(&self) -> (usize, usize) {
        (self.x1, self.x2)
    }

    /// Number of stored residues.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest `u` the table was truncated for.
    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    /// Evaluates the kernel at `(x1, u1; x2, u2)`.
    pub fn eval(&self, u1: f64, u2: f64) -> f64 {
        let s = self.scale;
        let (v1, v2) = (Dd::from(s) * Dd::from(u1), Dd::from(s) * Dd::from(u2));
        let mut total = Dd::ZERO;
        if self.x2 < self.x1 && u2 < u1 {
            let d = self.x1 - self.x2 - 1;
            let fact: f64 = (1..=d).map(|m| m as f64).product();
            total = total + (v2 - v1).powi(d as u32) / Dd::from(fact);
        }
        for &(j, z, c) in &self.terms {
            let t = c * Scaled::powi(v1, j) * Scaled::powi(v2, z);
            total = total + t.to_dd();
        }
        s * total.to_f64()
    }
}

fn check_levels(x1: usize, x2: usize) -> Result<()> {
    if x1 < 2 || x2 < 2 {
        return domain(format!("levels must be at least 2, got ({x1}, {x2})"));
    }
    Ok(())
}

/// The finite-`n` kernel of `Δ_n` or `Δ_n ∖ (n-k, k)` on levels `(x1, x2)`
/// in the rescaled coordinates `u = sqrt(n)(1 - entry)`.
pub fn finite_n_table(family: StaircaseFamily, x1: usize, x2: usize) -> Result<ResidueKernel> {
    check_levels(x1, x2)?;
    let n = family.n();
    if x1 > 2 * n - 2 || x2 > 2 * n - 2 {
        return domain(format!("levels must be at most 2n - 2 = {}", 2 * n - 2));
    }
    let shape = match family {
        StaircaseFamily::Full { n } => make_staircase(n)?,
        StaircaseFamily::MinusCorner { n, k } => make_staircase_minus(n, k)?,
    };
    let lambda: Vec<i64> = (1..=n).map(|i| shape.row_len(i) as i64).collect();
    let (ni, x1i, x2i) = (n as i64, x1 as i64, x2 as i64);
    let z_end = lambda[0] + ni - x2i;
    let mut terms = Vec::new();
    for j in 0..x1i {
        let mut wf: Vec<Local> = (0..x1i).map(|jp| linear(-1, jp, j).recip()).collect();
        wf.extend((1..=ni).map(|i| linear(-1, x1i - ni - 1 - lambda[i as usize - 1] + i, j)));
        let Some(rw) = residue(&wf)? else { continue };
        for z0 in 0..z_end {
            let mut zf: Vec<Local> = (1..=x2i).map(|m| linear(1, m, z0)).collect();
            zf.extend(
                (1..=ni).map(|i| linear(1, x2i - ni - lambda[i as usize - 1] + i, z0).recip()),
            );
            zf.push(linear(1, j + x2i - x1i + 1, z0).recip());
            if let Some(rz) = residue(&zf)? {
                terms.push((j as u32, z0 as u32, rw * rz));
            }
        }
    }
    Ok(ResidueKernel {
        x1,
        x2,
        scale: 1.0 / (n as f64).sqrt(),
        terms,
        u_max: (n as f64).sqrt(),
    })
}

/// Finite-`n` kernel at a single point.
pub fn finite_n_kernel(
    family: StaircaseFamily,
    x1: usize,
    u1: f64,
    x2: usize,
    u2: f64,
) -> Result<f64> {
    Ok(finite_n_table(family, x1, x2)?.eval(u1, u2))
}

/// The limiting kernel (`k = None`) or the conditioned limiting kernel on
/// levels `(x1, x2)`, with the `z`-series truncated for `u2 <= u_max` or
/// after `trunc` residues, whichever comes first.
pub fn limit_table(
    k: Option<usize>,
    x1: usize,
    x2: usize,
    u_max: f64,
    trunc: usize,
) -> Result<ResidueKernel> {
    check_levels(x1, x2)?;
    if k == Some(0) {
        return domain("k must be at least 1");
    }
    let (x1i, x2i) = (x1 as i64, x2 as i64);
    let two_k = k.map(|k| 2 * k as i64);
    let log2_u = if u_max > 0.0 {
        u_max.log2()
    } else {
        f64::NEG_INFINITY
    };
    let mut terms = Vec::new();
    for j in 0..x1i {
        let mut wf: Vec<Local> = (0..x1i).map(|jp| linear(-1, jp, j).recip()).collect();
        wf.push(rgamma_half(1, 1 - x1i, j));
        if let Some(tk) = two_k {
            wf.push(linear(-1, x1i - tk, j));
            wf.push(linear(-1, x1i - tk - 1, j).recip());
        }
        let Some(rw) = residue(&wf)? else { continue };
        // Stop once past the peak of u_max^z |c_z| and three consecutive
        // nonzero terms are negligible in absolute terms.
        let z_floor = (2.0 * u_max * u_max) as i64 + x1i + x2i + two_k.unwrap_or(0) + 8;
        let mut small_run = 0;
        for z0 in 0..trunc as i64 {
            let mut zf: Vec<Local> = (1..=x2i).map(|m| linear(1, m, z0)).collect();
            zf.push(gamma_half(-1, -x2i, z0));
            if let Some(tk) = two_k {
                zf.push(linear(1, x2i - tk, z0));
                zf.push(linear(1, x2i - tk + 1, z0).recip());
            }
            zf.push(linear(1, j + x2i - x1i + 1, z0).recip());
            let Some(rz) = residue(&zf)? else { continue };
            let c = rw * rz;
            terms.push((j as u32, z0 as u32, c));
            let size = c.log2_abs() + z0 as f64 * log2_u;
            if size < Z_TOL_LOG2 {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if z0 > z_floor && small_run >= 3 {
                break;
            }
        }
    }
    Ok(ResidueKernel {
        x1,
        x2,
        scale: 1.0,
        terms,
        u_max,
    })
}

/// The conditioned limiting kernel `K'_k(x1, u1; x2, u2)`.
pub fn conditioned_kernel(
    k: usize,
    x1: usize,
    u1: f64,
    x2: usize,
    u2: f64,
    trunc: usize,
) -> Result<f64> {
    let u_max = u1.max(u2).max(1.0);
    Ok(limit_table(Some(k), x1, x2, u_max, trunc)?.eval(u1, u2))
}

/// The limiting kernel `K'(x1, u1; x2, u2)` of the staircase edge.
pub fn limiting_kernel_residue(
    x1: usize,
    u1: f64,
    x2: usize,
    u2: f64,
    trunc: usize,
) -> Result<f64> {
    let u_max = u1.max(u2).max(1.0);
    Ok(limit_table(None, x1, x2, u_max, trunc)?.eval(u1, u2))
}
