//! First-swap times, swap spacings, circle identities and the swap density.
//!
//! A swap process is viewed on the circle of length `K = 2N` through the
//! periodic extension. The distance between two particles on the circle is
//! one plus the number of holes between them.

use crate::error::{domain, Result};
use crate::exec::{sample_many, Exec, Rng};
use crate::sorting_network::{
    enumerate_networks, network_length, periodic_lookup, EdelmanGreene, SortingNetwork,
};
use crate::tableaux::{
    hook_length, make_staircase, make_staircase_minus, sample_syt, HookWalk, Shape, StandardTableau,
};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt::Write as _;

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k >= n {
        return domain(format!("need 1 <= k <= n-1, got n={n}, k={k}"));
    }
    Ok(())
}

/// `min{t >= 1 : s_t = k}`.
pub fn first_swap_time(net: &SortingNetwork, k: usize) -> Result<usize> {
    check_k(net.n(), k)?;
    Ok(net
        .swaps()
        .iter()
        .position(|&s| s as usize == k)
        .expect("every adjacent swap occurs in a sorting network")
        + 1)
}

/// `Y - X` where `X = max{t <= a : s_t = k}` and `Y = min{t > a : s_t = k}`
/// in the periodic extension.
pub fn spacing_sp1(net: &SortingNetwork, k: usize, a: i64) -> Result<i64> {
    check_k(net.n(), k)?;
    let period = 2 * net.len() as i64;
    let hit = |t: i64| periodic_lookup(net, t) as usize == k;
    let x = (a - period + 1..=a)
        .rev()
        .find(|&t| hit(t))
        .expect("swap k occurs in every period");
    let y = (a + 1..=a + period)
        .find(|&t| hit(t))
        .expect("swap k occurs in every period");
    Ok(y - x)
}

/// Tableau form of the first-swap time: `N + 1 - T(n-k, k)`.
pub fn first_swap_from_tableau(t: &StandardTableau, k: usize) -> Result<usize> {
    let n = t
        .shape()
        .n_hint()
        .or_else(|| crate::tableaux::staircase_family(t.shape()).map(|f| f.n()))
        .ok_or_else(|| Error::Domain("tableau is not of staircase shape".into()))?;
    check_k(n, k)?;
    let v = t.get(n - k, k).expect("corner lies in the staircase") as usize;
    Ok(network_length(n) + 1 - v)
}

/// Samples the first time swap `k` occurs in a uniform network on `n` wires.
///
/// Runs the hook walk on the staircase only until the corner `(n-k, k)`
/// receives its label, which has the same law as the full construction.
pub fn sample_first_swap(n: usize, k: usize, rng: &mut Rng) -> Result<usize> {
    check_k(n, k)?;
    let mut walk = HookWalk::new(&make_staircase(n)?);
    loop {
        let (i, j, label) = walk.step(rng);
        if (i, j) == (n - k, k) {
            return Ok(network_length(n) + 1 - label as usize);
        }
    }
}

/// Conditional spacing read off a tableau of shape `Δ_n ∖ (n-k, k)`:
/// `N` minus the larger of the entries at `(n-k-1, k)` and `(n-k, k-1)`,
/// using whichever of the two cells exist.
pub fn conditional_spacing_from_tableau(t: &StandardTableau, n: usize, k: usize) -> Result<usize> {
    check_k(n, k)?;
    if t.shape().rows() != make_staircase_minus(n, k)?.rows() {
        return domain("tableau is not of shape Δ_n minus the corner (n-k, k)");
    }
    let up = if n - k >= 2 {
        t.get(n - k - 1, k)
    } else {
        None
    };
    let left = if k >= 2 { t.get(n - k, k - 1) } else { None };
    let m = up
        .into_iter()
        .chain(left)
        .max()
        .expect("a neighbour exists for n >= 3") as usize;
    Ok(network_length(n) - m)
}

/// Samples the spacing after a swap `k`, conditioned on a swap `k` at the
/// anchor, through a uniform tableau of shape `Δ_n ∖ (n-k, k)`.
///
/// Only the labels down to the larger neighbour of the removed corner are
/// generated.
pub fn sample_conditional_spacing(n: usize, k: usize, rng: &mut Rng) -> Result<usize> {
    check_k(n, k)?;
    if n < 3 {
        return domain("the conditional spacing needs n >= 3");
    }
    let shape = make_staircase_minus(n, k)?;
    let up = (n - k >= 2).then(|| (n - k - 1, k));
    let left = (k >= 2).then(|| (n - k, k - 1));
    let mut walk = HookWalk::new(&shape);
    loop {
        let (i, j, label) = walk.step(rng);
        if Some((i, j)) == up || Some((i, j)) == left {
            return Ok(network_length(n) - label as usize);
        }
    }
}

/// Samples the spacing `Sp` around the anchor `a` (1 <= a <= N) in a uniform
/// network, producing swaps lazily through Edelman–Greene.
///
/// By rotation invariance the law does not depend on `a`; an anchor well
/// inside the network means that usually only a prefix has to be produced.
pub fn sample_spacing(n: usize, k: usize, anchor: usize, rng: &mut Rng) -> Result<usize> {
    check_k(n, k)?;
    let big = network_length(n);
    if anchor < 1 || anchor > big {
        return domain(format!("anchor {anchor} outside 1..={big}"));
    }
    let t = sample_syt(&make_staircase(n)?, rng);
    let mut lazy = LazyNetwork {
        eg: EdelmanGreene::new(&t)?,
        swaps: Vec::with_capacity(anchor + n * n),
        n,
    };
    let a = anchor as i64;
    let period = 2 * big as i64;
    let mut y = None;
    for t in a + 1..=a + period {
        if lazy.at(t) == k {
            y = Some(t);
            break;
        }
    }
    let mut x = None;
    for t in (a - period + 1..=a).rev() {
        if lazy.at(t) == k {
            x = Some(t);
            break;
        }
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok((y - x) as usize),
        _ => unreachable!("swap k occurs in every period"),
    }
}

struct LazyNetwork {
    eg: EdelmanGreene,
    swaps: Vec<u32>,
    n: usize,
}

impl LazyNetwork {
    fn at(&mut self, t: i64) -> usize {
        let big = network_length(self.n) as i64;
        let r = (t - 1).rem_euclid(2 * big);
        if r < big {
            self.base(r as usize)
        } else {
            self.n - self.base((r - big) as usize)
        }
    }

    fn base(&mut self, idx: usize) -> usize {
        while self.swaps.len() <= idx {
            let s = self.eg.next_swap().expect("index lies within the network");
            self.swaps.push(s);
        }
        self.swaps[idx] as usize
    }
}

/// A weighted family of occupancy patterns on the circle `1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleProcess {
    k_len: usize,
    configs: Vec<(Vec<bool>, BigRational)>,
}

/// How [`circle_from_networks`] builds its process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleMode {
    /// Every network on `n <= 5` wires with equal weight.
    Exact,
    /// `samples` uniform networks with equal empirical weight.
    MonteCarlo { samples: usize, seed: u64 },
}

impl CircleProcess {
    /// Builds a process from weighted patterns; weights must sum to one.
    pub fn new(k_len: usize, configs: Vec<(Vec<bool>, BigRational)>) -> Result<CircleProcess> {
        if k_len < 2 {
            return domain("circle length must be at least 2");
        }
        if configs.iter().any(|(m, _)| m.len() != k_len) {
            return domain("occupancy mask length differs from the circle length");
        }
        let total: BigRational = configs.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return domain(format!("weights sum to {total}, not 1"));
        }
        Ok(CircleProcess { k_len, configs })
    }

    /// Equal-weight empirical process from sampled patterns.
    pub fn from_samples(k_len: usize, masks: Vec<Vec<bool>>) -> Result<CircleProcess> {
        if masks.is_empty() {
            return domain("no samples");
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(masks.len()));
        CircleProcess::new(k_len, masks.into_iter().map(|m| (m, w.clone())).collect())
    }

    /// Circle length `K`.
    pub fn len(&self) -> usize {
        self.k_len
    }

    /// Always false for a valid process.
    pub fn is_empty(&self) -> bool {
        self.k_len == 0
    }

    /// Weighted patterns.
    pub fn configs(&self) -> &[(Vec<bool>, BigRational)] {
        &self.configs
    }

    /// Whether every rotation of the process has the same law.
    pub fn is_rotation_invariant(&self) -> bool {
        use std::collections::HashMap;
        let law = |shift: usize| {
            let mut m: HashMap<Vec<bool>, BigRational> = HashMap::new();
            for (mask, w) in &self.configs {
                let mut r = mask.clone();
                r.rotate_left(shift);
                *m.entry(r).or_insert_with(BigRational::zero) += w;
            }
            m
        };
        let base = law(0);
        (1..self.k_len).all(|s| law(s) == base)
    }
}

fn network_mask(net: &SortingNetwork, k: usize) -> Vec<bool> {
    (1..=2 * net.len() as i64)
        .map(|t| periodic_lookup(net, t) as usize == k)
        .collect()
}

/// Circle of length `2N` where position `t` is occupied iff `s_t = k`.
pub fn circle_from_networks(n: usize, k: usize, mode: CircleMode) -> Result<CircleProcess> {
    check_k(n, k)?;
    let k_len = 2 * network_length(n);
    match mode {
        CircleMode::Exact => {
            let nets = enumerate_networks(n)?;
            let w = BigRational::new(BigInt::one(), BigInt::from(nets.len()));
            CircleProcess::new(
                k_len,
                nets.iter()
                    .map(|net| (network_mask(net, k), w.clone()))
                    .collect(),
            )
        }
        CircleMode::MonteCarlo { samples, seed } => {
            let masks = sample_many(Exec::Parallel, samples, seed, |rng| {
                crate::sorting_network::sample_network(n, rng).map(|net| network_mask(&net, k))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            CircleProcess::from_samples(k_len, masks)
        }
    }
}

/// Laws of the waiting time, the two spacings and the density on a circle.
///
/// Vectors are indexed by `ℓ - 1` for `ℓ = 1..=K`; `g` has one extra entry
/// `g(K + 1) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingReport {
    /// Law of the waiting time `W` to the first particle in `1..=K`.
    pub g: Vec<BigRational>,
    /// Law of the spacing `Sp_1` around the origin.
    pub f1: Vec<BigRational>,
    /// Law of the spacing `Sp_2` after a particle at the origin.
    pub f2: Vec<BigRational>,
    /// Probability that a given position is occupied.
    pub rho: BigRational,
}

/// Computes [`SpacingReport`] for a circle process.
pub fn circle_stats(p: &CircleProcess) -> Result<SpacingReport> {
    let k_len = p.k_len;
    let mut g = vec![BigRational::zero(); k_len + 1];
    let mut f1 = vec![BigRational::zero(); k_len];
    let mut f2 = vec![BigRational::zero(); k_len];
    let mut rho = BigRational::zero();
    for (mask, w) in &p.configs {
        let first = mask
            .iter()
            .position(|&b| b)
            .ok_or_else(|| Error::Domain("empty configuration on the circle".into()))?
            + 1;
        let last = mask.iter().rposition(|&b| b).expect("non-empty") + 1;
        g[first - 1] += w;
        f1[k_len - last + first - 1] += w;
        if mask[k_len - 1] {
            rho += w;
            f2[first - 1] += w;
        }
    }
    if rho.is_zero() {
        return domain("the origin is never occupied, so Sp_2 is undefined");
    }
    for v in &mut f2 {
        *v /= &rho;
    }
    Ok(SpacingReport { g, f1, f2, rho })
}

/// Residuals of `-Δg(ℓ)·ℓ = f1(ℓ)` and `-Δg(ℓ) = ρ·f2(ℓ)` for `ℓ = 1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleResiduals {
    /// `-Δg(ℓ)·ℓ - f1(ℓ)`.
    pub first: Vec<BigRational>,
    /// `-Δg(ℓ) - ρ·f2(ℓ)`.
    pub second: Vec<BigRational>,
}

impl CircleResiduals {
    /// Whether every residual vanishes.
    pub fn all_zero(&self) -> bool {
        self.first.iter().chain(&self.second).all(Zero::is_zero)
    }
}

/// Evaluates both circle identities.
pub fn check_circle_relations(r: &SpacingReport) -> CircleResiduals {
    let k_len = r.f1.len();
    let mut first = Vec::with_capacity(k_len);
    let mut second = Vec::with_capacity(k_len);
    for l in 1..=k_len {
        let minus_delta = &r.g[l - 1] - &r.g[l];
        first.push(&minus_delta * BigRational::from_integer(BigInt::from(l)) - &r.f1[l - 1]);
        second.push(minus_delta - &r.rho * &r.f2[l - 1]);
    }
    CircleResiduals { first, second }
}

fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn ratio_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl SpacingReport {
    /// CSV with columns `ell,g,f1,f2,resid1,resid2` in floating point.
    pub fn to_csv(&self) -> String {
        let res = check_circle_relations(self);
        let mut out = String::from("ell,g,f1,f2,resid1,resid2\n");
        for l in 1..=self.f1.len() {
            let _ = writeln!(
                out,
                "{l},{},{},{},{},{}",
                ratio_f64(&self.g[l - 1]),
                ratio_f64(&self.f1[l - 1]),
                ratio_f64(&self.f2[l - 1]),
                ratio_f64(&res.first[l - 1]),
                ratio_f64(&res.second[l - 1]),
            );
        }
        out
    }
}

impl Serialize for SpacingReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            g: Vec<String>,
            f1: Vec<String>,
            f2: Vec<String>,
            rho: String,
        }
        let strings = |v: &[BigRational]| v.iter().map(ratio_string).collect();
        Raw {
            g: strings(&self.g),
            f1: strings(&self.f1),
            f2: strings(&self.f2),
            rho: ratio_string(&self.rho),
        }
        .serialize(s)
    }
}

/// Probability that a fixed time carries swap `k`:
/// `#SYT(Δ_n ∖ (n-k, k)) / #SYT(Δ_n)`.
///
/// Evaluated as a product of hook ratios; only the hooks in row `n-k` and
/// column `k` change when the corner is removed.
pub fn rho_exact(n: usize, k: usize) -> Result<BigRational> {
    check_k(n, k)?;
    let full = make_staircase(n)?;
    let minus = make_staircase_minus(n, k)?;
    let mut num = BigInt::one();
    let mut den = BigInt::from(network_length(n));
    let changed = |(i, j): (usize, usize)| i == n - k || j == k;
    for cell in minus.cells().filter(|&c| changed(c)) {
        num *= BigInt::from(hook_length(&full, cell)?);
        den *= BigInt::from(hook_length(&minus, cell)?);
    }
    Ok(BigRational::new(num, den))
}

/// `4 / (sqrt(pi) n^{3/2}) · (2k-1)!! / (2k-2)!!`.
pub fn rho_asym(n: usize, k: usize) -> Result<f64> {
    check_k(n, k)?;
    Ok(4.0 / (std::f64::consts::PI.sqrt() * (n as f64).powf(1.5)) * double_factorial_ratio(k))
}

/// `(2k-1)!! / (2k-2)!!` with `0!! = 1`.
pub fn double_factorial_ratio(k: usize) -> f64 {
    (1..k).fold(1.0, |acc, j| acc * (2 * j + 1) as f64 / (2 * j) as f64)
}

/// Ratio of the two tableau counts computed directly, for cross-checking
/// [`rho_exact`] on small shapes.
pub fn rho_by_counts(n: usize, k: usize) -> Result<BigRational> {
    check_k(n, k)?;
    let c = |s: &Shape| BigInt::from(crate::tableaux::count_syt(s));
    Ok(BigRational::new(
        c(&make_staircase_minus(n, k)?),
        c(&make_staircase(n)?),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_for_four_wires_and_first_swap_is_five_sixteenths() {
        assert_eq!(
            rho_exact(4, 1).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(16))
        );
    }

    #[test]
    fn three_wire_circle_matches_hand_computation() {
        let p = circle_from_networks(3, 1, CircleMode::Exact).unwrap();
        let r = circle_stats(&p).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(r.g[0], half);
        assert_eq!(r.g[1], half);
        assert!(r.f1[1].is_one());
        assert!(r.f2[1].is_one());
        assert_eq!(r.rho, half);
        assert!(check_circle_relations(&r).all_zero());
    }
}
