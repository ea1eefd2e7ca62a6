//! Sorting networks: validation, counting, enumeration, the Edelman–Greene
//! bijection, the periodic extension and wiring diagrams.
//!
//! A swap `k` exchanges the entries in positions `k` and `k + 1`; a word
//! `s_1 ... s_N` acts left to right on `(1 2 ... n)`.

use crate::error::{domain, Error, Result};
use crate::exec::Rng;
use crate::tableaux::{
    make_staircase, sample_syt, staircase_family, StaircaseFamily, StandardTableau,
};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Largest `n` accepted by [`enumerate_networks`].
pub const ENUMERATION_MAX_N: usize = 5;

/// A reduced word `s_1 ... s_N` for the reverse permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NetworkJson", into = "NetworkJson")]
pub struct SortingNetwork {
    n: usize,
    swaps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    n: usize,
    swaps: Vec<u32>,
}

impl TryFrom<NetworkJson> for SortingNetwork {
    type Error = Error;
    fn try_from(raw: NetworkJson) -> Result<SortingNetwork> {
        SortingNetwork::new(raw.n, raw.swaps)
    }
}

impl From<SortingNetwork> for NetworkJson {
    fn from(net: SortingNetwork) -> NetworkJson {
        NetworkJson {
            n: net.n,
            swaps: net.swaps,
        }
    }
}

/// `N = n(n-1)/2`.
pub fn network_length(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl SortingNetwork {
    /// Validates a swap sequence.
    pub fn new(n: usize, swaps: Vec<u32>) -> Result<SortingNetwork> {
        if !is_sorting_network(n, &swaps)? {
            return domain(format!("{swaps:?} is not a sorting network on {n} wires"));
        }
        Ok(SortingNetwork { n, swaps })
    }

    pub(crate) fn from_swaps_unchecked(n: usize, swaps: Vec<u32>) -> SortingNetwork {
        SortingNetwork { n, swaps }
    }

    /// Number of wires.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The swaps `s_1 ... s_N`.
    pub fn swaps(&self) -> &[u32] {
        &self.swaps
    }

    /// Number of swaps `N`.
    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    /// Always false: a valid network on at least two wires has a swap.
    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }
}

/// Whether `swaps` has length `N` and multiplies to the reverse permutation.
pub fn is_sorting_network(n: usize, swaps: &[u32]) -> Result<bool> {
    if n < 2 {
        return domain(format!("a sorting network needs n >= 2, got {n}"));
    }
    if let Some(&bad) = swaps.iter().find(|&&s| s < 1 || s as usize >= n) {
        return domain(format!("swap {bad} outside 1..={}", n - 1));
    }
    if swaps.len() != network_length(n) {
        return Ok(false);
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    for &s in swaps {
        perm.swap(s as usize - 1, s as usize);
    }
    Ok(perm.iter().copied().eq((1..=n).rev()))
}

/// Number of sorting networks on `n` wires:
/// `C(n,2)! / prod_{j=1}^{n-1} (2n-1-2j)^j`.
pub fn stanley_count(n: usize) -> Result<BigUint> {
    if n < 2 {
        return domain(format!("stanley_count needs n >= 2, got {n}"));
    }
    let mut num = BigUint::one();
    for m in 2..=network_length(n) {
        num *= BigUint::from(m);
    }
    let mut den = BigUint::one();
    for j in 1..n {
        den *= BigUint::from(2 * n - 1 - 2 * j).pow(j as u32);
    }
    Ok(num / den)
}

/// All sorting networks on `n <= 5` wires, in lexicographic order.
pub fn enumerate_networks(n: usize) -> Result<Vec<SortingNetwork>> {
    if n < 2 {
        return domain(format!("enumerate_networks needs n >= 2, got {n}"));
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::Resource(format!(
            "enumerating networks on {n} wires exceeds the cap {ENUMERATION_MAX_N}"
        )));
    }
    fn rec(perm: &mut [usize], word: &mut Vec<u32>, len: usize, out: &mut Vec<SortingNetwork>) {
        if word.len() == len {
            out.push(SortingNetwork::from_swaps_unchecked(
                perm.len(),
                word.clone(),
            ));
            return;
        }
        for k in 1..perm.len() {
            // Only swaps that create an inversion can appear in a reduced word.
            if perm[k - 1] < perm[k] {
                perm.swap(k - 1, k);
                word.push(k as u32);
                rec(perm, word, len, out);
                word.pop();
                perm.swap(k - 1, k);
            }
        }
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    rec(&mut perm, &mut Vec::new(), network_length(n), &mut out);
    Ok(out)
}

/// Incremental Edelman–Greene map: each call to [`EdelmanGreene::next_swap`]
/// produces the next swap of the network.
///
/// Entries are stored relative to a running offset so the "add one to every
/// entry" step costs nothing. The tableau lives in a flat row-major grid of
/// width `n - 1`.
#[derive(Debug, Clone)]
pub struct EdelmanGreene {
    n: usize,
    grid: Vec<i32>,
    offset: i32,
    emitted: usize,
}

impl EdelmanGreene {
    /// Starts the map on a tableau of staircase shape.
    pub fn new(t: &StandardTableau) -> Result<EdelmanGreene> {
        let n = match staircase_family(t.shape()) {
            Some(StaircaseFamily::Full { n }) => n,
            _ => {
                return domain(format!(
                    "Edelman–Greene needs a staircase shape, got {:?}",
                    t.shape().rows()
                ))
            }
        };
        let width = n - 1;
        let mut grid = vec![0; width * width];
        for (i, row) in t.rows().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                grid[i * width + j] = v as i32;
            }
        }
        Ok(EdelmanGreene {
            n,
            grid,
            offset: 0,
            emitted: 0,
        })
    }

    /// Number of swaps produced so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// The next swap, or `None` after `N` swaps.
    pub fn next_swap(&mut self) -> Option<u32> {
        let n = self.n;
        if self.emitted == network_length(n) {
            return None;
        }
        let width = n - 1;
        let big = network_length(n) as i32 - self.offset;
        let grid = &mut self.grid[..];
        // The largest entry sits in a corner (n - l, l), at flat index
        // (n - l - 1) * width + l - 1.
        let l = (1..n)
            .find(|&l| grid[(n - l - 1) * width + l - 1] == big)
            .expect("the largest entry of a staircase tableau lies in a corner");
        let mut pos = (n - l - 1) * width + l - 1;
        let (mut i, mut j) = (n - l - 1, l - 1);
        while i > 0 && j > 0 {
            let up = grid[pos - width];
            let left = grid[pos - 1];
            debug_assert_ne!(up, left, "entries of a standard tableau are distinct");
            if up > left {
                grid[pos] = up;
                pos -= width;
                i -= 1;
            } else {
                grid[pos] = left;
                pos -= 1;
                j -= 1;
            }
        }
        // On the first row or column only one neighbour remains.
        while pos > 0 {
            let step = if i > 0 {
                i -= 1;
                width
            } else {
                1
            };
            grid[pos] = grid[pos - step];
            pos -= step;
        }
        self.offset += 1;
        grid[0] = 1 - self.offset;
        self.emitted += 1;
        Some(l as u32)
    }
}

/// The Edelman–Greene image of a staircase tableau.
pub fn edelman_greene(t: &StandardTableau) -> Result<SortingNetwork> {
    let mut eg = EdelmanGreene::new(t)?;
    let n = eg.n;
    let swaps: Vec<u32> = std::iter::from_fn(|| eg.next_swap()).collect();
    debug_assert!(is_sorting_network(n, &swaps).unwrap_or(false));
    Ok(SortingNetwork::from_swaps_unchecked(n, swaps))
}

/// A uniformly random sorting network on `n` wires.
pub fn sample_network(n: usize, rng: &mut Rng) -> Result<SortingNetwork> {
    let t = sample_syt(&make_staircase(n)?, rng);
    edelman_greene(&t)
}

/// Swap at time `t` of the periodic extension, where `s_{t+N} = n - s_t`.
pub fn periodic_lookup(net: &SortingNetwork, t: i64) -> u32 {
    let big = net.len() as i64;
    let r = (t - 1).rem_euclid(2 * big);
    if r < big {
        net.swaps[r as usize]
    } else {
        net.n as u32 - net.swaps[(r - big) as usize]
    }
}

/// The network `(s_2, ..., s_N, n - s_1)`.
pub fn shift(net: &SortingNetwork) -> SortingNetwork {
    let mut swaps = net.swaps[1..].to_vec();
    swaps.push(net.n as u32 - net.swaps[0]);
    SortingNetwork::from_swaps_unchecked(net.n, swaps)
}

/// Wiring diagram of a network as an SVG 1.1 document.
///
/// Wire heights run from 1 at the top to `n` at the bottom; the crossing for
/// `s_t = k` is centred at abscissa `t` and marked by a circle whose title is
/// `t=<t> k=<k>`.
pub fn wiring_svg(net: &SortingNetwork) -> String {
    const DX: f64 = 40.0;
    const DY: f64 = 30.0;
    const MARGIN: f64 = 30.0;
    let n = net.n;
    let big = net.len();
    let x_of = |t: f64| MARGIN + t * DX;
    let y_of = |h: usize| MARGIN + (h - 1) as f64 * DY;
    let width = x_of(big as f64 + 1.0) + MARGIN;
    let height = y_of(n) + MARGIN;

    // paths[w] lists the height of wire w after each prefix of swaps.
    let mut at_height: Vec<usize> = (0..n).collect();
    let mut paths: Vec<Vec<usize>> = (0..n).map(|w| vec![w + 1]).collect();
    for &s in &net.swaps {
        at_height.swap(s as usize - 1, s as usize);
        let mut heights = vec![0; n];
        for (h, &w) in at_height.iter().enumerate() {
            heights[w] = h + 1;
        }
        for (w, p) in paths.iter_mut().enumerate() {
            p.push(heights[w]);
        }
    }

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (w, p) in paths.iter().enumerate() {
        let mut points = format!("{},{}", x_of(0.0), y_of(p[0]));
        for (t, &h) in p.iter().enumerate() {
            let _ = write!(points, " {},{}", x_of(t as f64 + 0.5), y_of(h));
        }
        let _ = write!(points, " {},{}", x_of(big as f64 + 1.0), y_of(p[big]));
        let _ = writeln!(
            svg,
            r#"  <polyline fill="none" stroke="black" stroke-width="1.5" points="{points}"><title>wire {}</title></polyline>"#,
            w + 1
        );
    }
    for (t, &s) in net.swaps.iter().enumerate() {
        let t = t + 1;
        let cy = 0.5 * (y_of(s as usize) + y_of(s as usize + 1));
        let _ = writeln!(
            svg,
            r#"  <circle cx="{}" cy="{cy}" r="3" fill="red"><title>t={t} k={s}</title></circle>"#,
            x_of(t as f64)
        );
    }
    for h in 1..=n {
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" font-size="12" text-anchor="end">{h}</text>"#,
            MARGIN - 8.0,
            y_of(h) + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
