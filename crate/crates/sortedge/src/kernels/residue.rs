//! Local expansions of meromorphic factors at integer points.
//!
//! Every integrand in this crate is a product of linear factors, their
//! reciprocals, Gamma functions at half-integer lattices and powers. At an
//! integer point `s0` each factor behaves like `c·(s - s0)^p`; the residue of
//! the product is the product of the `c`s when the orders add up to `-1`.

use crate::dd::Dd;
use crate::error::{Error, Result};
use std::ops::Mul;

/// A double-double mantissa with a separate binary exponent, so products of
/// many large or tiny factors neither overflow nor underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    m: Dd,
    e: i64,
}

impl Scaled {
    /// One.
    pub const ONE: Scaled = Scaled { m: Dd::ONE, e: 0 };

    /// Wraps a double-double.
    pub fn new(m: Dd) -> Scaled {
        Scaled { m, e: 0 }.normalized()
    }

    /// Wraps an integer exactly.
    pub fn from_i64(v: i64) -> Scaled {
        Scaled::new(Dd::from(v))
    }

    fn normalized(self) -> Scaled {
        if self.m.hi() == 0.0 || !self.m.is_finite() {
            return self;
        }
        let (_, ex) = libm::frexp(self.m.hi());
        Scaled {
            m: self.m.ldexp(-ex),
            e: self.e + ex as i64,
        }
    }

    /// Whether the value is exactly zero.
    pub fn is_zero(self) -> bool {
        self.m.hi() == 0.0
    }

    /// Reciprocal.
    pub fn recip(self) -> Scaled {
        Scaled {
            m: Dd::ONE / self.m,
            e: -self.e,
        }
        .normalized()
    }

    /// Converts to a double-double, flushing to zero below the double range.
    pub fn to_dd(self) -> Dd {
        if self.e < -1100 {
            Dd::ZERO
        } else if self.e > 1100 {
            self.m.ldexp(1100)
        } else {
            self.m.ldexp(self.e as i32)
        }
    }

    /// Base-2 logarithm of the magnitude, `-inf` for zero.
    pub fn log2_abs(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.hi().abs().log2() + self.e as f64
        }
    }

    /// Integer power `x^p` of a double-double, scaled.
    pub fn powi(x: Dd, p: u32) -> Scaled {
        let mut base = Scaled::new(x);
        let mut acc = Scaled::ONE;
        let mut p = p;
        while p > 0 {
            if p & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            p >>= 1;
        }
        acc
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        Scaled {
            m: self.m * o.m,
            e: self.e + o.e,
        }
        .normalized()
    }
}

/// Leading behaviour `coeff·(s - s0)^order` of a factor at a point `s0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Local {
    /// Order of the zero (positive) or pole (negative).
    pub order: i32,
    /// Leading Laurent coefficient.
    pub coeff: Scaled,
}

impl Local {
    /// A factor that is analytic and nonzero with the given value.
    pub fn value(v: Scaled) -> Local {
        Local { order: 0, coeff: v }
    }

    /// The local behaviour of `1 / f`.
    pub fn recip(self) -> Local {
        Local {
            order: -self.order,
            coeff: self.coeff.recip(),
        }
    }
}

impl Mul for Local {
    type Output = Local;
    fn mul(self, o: Local) -> Local {
        Local {
            order: self.order + o.order,
            coeff: self.coeff * o.coeff,
        }
    }
}

/// The linear factor `a·s + b` at the integer `s0`, with `a = ±1`.
pub fn linear(a: i64, b: i64, s0: i64) -> Local {
    let v = a * s0 + b;
    if v == 0 {
        Local {
            order: 1,
            coeff: Scaled::from_i64(a),
        }
    } else {
        Local::value(Scaled::from_i64(v))
    }
}

/// `k!` as a scaled double-double.
pub fn factorial(k: u64) -> Scaled {
    (2..=k).fold(Scaled::ONE, |acc, j| acc * Scaled::from_i64(j as i64))
}

/// `Γ((σ·s + c) / 2)` at the integer `s0`, with `σ = ±1`.
pub fn gamma_half(sigma: i64, c: i64, s0: i64) -> Local {
    let twice = sigma * s0 + c;
    if twice <= 0 && twice % 2 == 0 {
        // Γ(-q + ε) ≈ (-1)^q / (q! ε) with ε = σ(s - s0)/2.
        let q = (-twice / 2) as u64;
        let sign = if q.is_multiple_of(2) { 1 } else { -1 };
        return Local {
            order: -1,
            coeff: Scaled::from_i64(2 * sigma * sign) * factorial(q).recip(),
        };
    }
    Local::value(gamma_of_half_integer(twice))
}

/// `1 / Γ((σ·s + c) / 2)` at the integer `s0`.
pub fn rgamma_half(sigma: i64, c: i64, s0: i64) -> Local {
    gamma_half(sigma, c, s0).recip()
}

/// `Γ(t / 2)` for an integer `t` that is not a non-positive even number.
fn gamma_of_half_integer(t: i64) -> Scaled {
    if t % 2 == 0 {
        return factorial((t / 2 - 1) as u64);
    }
    // Γ(1/2 + m) = √π (2m)! / (4^m m!) and Γ(1/2 - m) = (-4)^m m! √π / (2m)!.
    let sqrt_pi = Scaled::new(Dd::SQRT_PI);
    let m = (t - 1) / 2;
    if m >= 0 {
        let m = m as u64;
        sqrt_pi * factorial(2 * m) * (factorial(m) * Scaled::powi(Dd::from(4.0), m as u32)).recip()
    } else {
        let m = (-m) as u64;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        sqrt_pi
            * Scaled::from_i64(sign)
            * Scaled::powi(Dd::from(4.0), m as u32)
            * factorial(m)
            * factorial(2 * m).recip()
    }
}

/// Residue of a product from the local behaviour of its factors, or `None`
/// when the product is analytic at the point.
pub fn residue(factors: &[Local]) -> Result<Option<Scaled>> {
    let total = factors.iter().fold(
        Local {
            order: 0,
            coeff: Scaled::ONE,
        },
        |a, &b| a * b,
    );
    match total.order {
        o if o >= 0 => Ok(None),
        -1 => Ok(Some(total.coeff)),
        o => Err(Error::Numeric(format!(
            "pole of order {} in a residue sum",
            -o
        ))),
    }
}
