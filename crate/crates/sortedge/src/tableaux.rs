//! Young diagrams, standard and Poissonized tableaux, exact counting,
//! uniform sampling, the rotated `(l, m)` coordinates of a staircase and the
//! projection of a tableau onto an interlacing point configuration.
//!
//! Cells are addressed `(i, j)` with row `i >= 1` counted from the top and
//! column `j >= 1` counted from the left.

use crate::error::{domain, Error, Result};
use crate::exec::Rng;
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on `|λ|` for the brute-force enumerator.
pub const ENUMERATION_CAP: usize = 12;

/// An integer partition `λ1 >= λ2 >= ... > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    rows: Vec<usize>,
    n_hint: Option<usize>,
}

impl Shape {
    /// Builds a shape from weakly decreasing row lengths; trailing zeros are
    /// dropped.
    pub fn new(mut rows: Vec<usize>) -> Result<Shape> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("row lengths {rows:?} are not weakly decreasing"));
        }
        Ok(Shape { rows, n_hint: None })
    }

    /// Attaches the staircase size `n` this shape belongs to.
    pub fn with_n_hint(mut self, n: usize) -> Shape {
        self.n_hint = Some(n);
        self
    }

    /// The staircase size this shape was built for, if any.
    pub fn n_hint(&self) -> Option<usize> {
        self.n_hint
    }

    /// Row lengths `λ1, λ2, ...`.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of cells `|λ|`.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of non-empty rows `ℓ(λ)`.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Length of row `i` (zero beyond the last row).
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.rows.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Length of column `j`.
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.rows.iter().take_while(|&&r| r >= j).count()
    }

    /// Whether cell `(i, j)` belongs to the diagram.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j <= self.row_len(i)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |j| (r + 1, j)))
    }
}

/// The staircase `Δ_n = (n-1, n-2, ..., 1)`.
pub fn make_staircase(n: usize) -> Result<Shape> {
    if n < 2 {
        return domain(format!("staircase needs n >= 2, got {n}"));
    }
    Ok(Shape::new((1..n).rev().collect())?.with_n_hint(n))
}

/// The staircase with the corner `(n-k, k)` removed.
pub fn make_staircase_minus(n: usize, k: usize) -> Result<Shape> {
    if n < 2 || k < 1 || k >= n {
        return domain(format!("need 1 <= k <= n-1 and n >= 2, got n={n}, k={k}"));
    }
    let mut rows: Vec<usize> = (1..n).rev().collect();
    rows[n - k - 1] = k - 1;
    Ok(Shape::new(rows)?.with_n_hint(n))
}

/// Which staircase family a shape belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaircaseFamily {
    /// `Δ_n`.
    Full { n: usize },
    /// `Δ_n` minus the corner `(n-k, k)`.
    MinusCorner { n: usize, k: usize },
}

impl StaircaseFamily {
    /// The staircase size `n`.
    pub fn n(self) -> usize {
        match self {
            StaircaseFamily::Full { n } | StaircaseFamily::MinusCorner { n, .. } => n,
        }
    }
}

/// Recognises `Δ_n` and `Δ_n ∖ (n-k, k)`.
pub fn staircase_family(shape: &Shape) -> Option<StaircaseFamily> {
    let size = shape.size();
    // |Δ_n| = n(n-1)/2 and |Δ_n ∖ corner| = n(n-1)/2 - 1.
    let n_full = (1..).find(|&n: &usize| n * (n - 1) / 2 >= size)?;
    if n_full >= 2 && n_full * (n_full - 1) / 2 == size {
        if let Ok(s) = make_staircase(n_full) {
            if s.rows == shape.rows {
                return Some(StaircaseFamily::Full { n: n_full });
            }
        }
    }
    let n = (1..).find(|&n: &usize| n * (n - 1) / 2 > size)?;
    if n >= 2 && n * (n - 1) / 2 == size + 1 {
        for k in 1..n {
            if make_staircase_minus(n, k).map(|s| s.rows == shape.rows) == Ok(true) {
                return Some(StaircaseFamily::MinusCorner { n, k });
            }
        }
    }
    None
}

/// Hook length `arm + leg + 1` of a cell.
pub fn hook_length(shape: &Shape, cell: (usize, usize)) -> Result<usize> {
    let (i, j) = cell;
    if !shape.contains(i, j) {
        return domain(format!(
            "cell ({i},{j}) lies outside shape {:?}",
            shape.rows
        ));
    }
    Ok(shape.row_len(i) - j + shape.col_len(j) - i + 1)
}

/// Number of standard Young tableaux of the shape (hook length formula).
pub fn count_syt(shape: &Shape) -> BigUint {
    let mut num = BigUint::one();
    for m in 2..=shape.size() {
        num *= BigUint::from(m);
    }
    let mut den = BigUint::one();
    for (i, j) in shape.cells() {
        den *= BigUint::from(shape.row_len(i) - j + shape.col_len(j) - i + 1);
    }
    num / den
}

/// A bijective filling of a shape by `1..=|λ|` increasing along rows and
/// down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Shape,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    /// Validates and wraps a row-wise filling.
    pub fn new(shape: Shape, rows: Vec<Vec<u32>>) -> Result<StandardTableau> {
        if rows.len() != shape.num_rows()
            || rows
                .iter()
                .zip(shape.rows())
                .any(|(r, &len)| r.len() != len)
        {
            return domain("filling does not match the shape");
        }
        let size = shape.size();
        let mut seen = vec![false; size + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > size || seen[v] {
                return domain(format!("entry {v} repeated or outside 1..={size}"));
            }
            seen[v] = true;
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if c + 1 < row.len() && row[c + 1] <= v {
                    return domain(format!("row {} is not increasing", r + 1));
                }
                if r + 1 < rows.len() && c < rows[r + 1].len() && rows[r + 1][c] <= v {
                    return domain(format!("column {} is not increasing", c + 1));
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub(crate) fn from_rows_unchecked(shape: Shape, rows: Vec<Vec<u32>>) -> StandardTableau {
        StandardTableau { shape, rows }
    }

    /// The underlying shape.
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Row-wise entries.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at cell `(i, j)`, if the cell exists.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        if i == 0 || j == 0 {
            return None;
        }
        self.rows.get(i - 1)?.get(j - 1).copied()
    }

    /// Entry at rotated coordinates `(l, m)` of a staircase of size `n`.
    pub fn get_rotated(&self, n: usize, l: usize, m: usize) -> Option<u32> {
        let (i, j) = unrotate_coord(n, l, m).ok()?;
        self.get(i, j)
    }

    /// Cell holding the largest entry `|λ|`.
    pub fn max_cell(&self) -> (usize, usize) {
        let size = self.shape.size() as u32;
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&v| v == size) {
                return (r + 1, c + 1);
            }
        }
        unreachable!("a standard tableau contains its largest entry")
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson<T> {
    shape: Vec<usize>,
    entries: Vec<(usize, usize, T)>,
}

impl Serialize for StandardTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            shape: self.shape.rows.clone(),
            entries: self
                .shape
                .cells()
                .map(|(i, j)| (i, j, self.rows[i - 1][j - 1]))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::<u32>::deserialize(d)?;
        let shape = Shape::new(raw.shape).map_err(serde::de::Error::custom)?;
        let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
        for (i, j, v) in raw.entries {
            if !shape.contains(i, j) {
                return Err(serde::de::Error::custom(format!(
                    "cell ({i},{j}) outside shape"
                )));
            }
            rows[i - 1][j - 1] = v;
        }
        StandardTableau::new(shape, rows).map_err(serde::de::Error::custom)
    }
}

/// A filling by distinct reals in `(0, 1)` increasing along rows and columns.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonizedTableau {
    shape: Shape,
    rows: Vec<Vec<f64>>,
}

impl PoissonizedTableau {
    /// Validates and wraps a row-wise filling.
    pub fn new(shape: Shape, rows: Vec<Vec<f64>>) -> Result<PoissonizedTableau> {
        if rows.len() != shape.num_rows()
            || rows
                .iter()
                .zip(shape.rows())
                .any(|(r, &len)| r.len() != len)
        {
            return domain("filling does not match the shape");
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if !(v > 0.0 && v < 1.0) {
                    return domain(format!("entry {v} outside (0,1)"));
                }
                if c + 1 < row.len() && row[c + 1] <= v {
                    return domain(format!("row {} is not increasing", r + 1));
                }
                if r + 1 < rows.len() && c < rows[r + 1].len() && rows[r + 1][c] <= v {
                    return domain(format!("column {} is not increasing", c + 1));
                }
            }
        }
        Ok(PoissonizedTableau { shape, rows })
    }

    /// The underlying shape.
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Row-wise entries.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Entry at cell `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if i == 0 || j == 0 {
            return None;
        }
        self.rows.get(i - 1)?.get(j - 1).copied()
    }
}

impl Serialize for PoissonizedTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            shape: self.shape.rows.clone(),
            entries: self
                .shape
                .cells()
                .map(|(i, j)| (i, j, self.rows[i - 1][j - 1]))
                .collect(),
        }
        .serialize(s)
    }
}

/// All standard tableaux of a shape with at most [`ENUMERATION_CAP`] cells.
pub fn enumerate_syt(shape: &Shape) -> Result<Vec<StandardTableau>> {
    enumerate_syt_capped(shape, ENUMERATION_CAP)
}

/// All standard tableaux of a shape with at most `cap` cells.
pub fn enumerate_syt_capped(shape: &Shape, cap: usize) -> Result<Vec<StandardTableau>> {
    let size = shape.size();
    if size > cap {
        return Err(Error::Resource(format!(
            "enumeration of a shape with {size} cells exceeds the cap {cap}"
        )));
    }
    let mut out = Vec::new();
    let mut fill = vec![0usize; shape.num_rows()];
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
    fn rec(
        shape: &Shape,
        v: u32,
        fill: &mut [usize],
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if v as usize > shape.size() {
            out.push(StandardTableau::from_rows_unchecked(
                shape.clone(),
                rows.clone(),
            ));
            return;
        }
        for r in 0..fill.len() {
            if fill[r] < shape.rows()[r] && (r == 0 || fill[r - 1] > fill[r]) {
                rows[r][fill[r]] = v;
                fill[r] += 1;
                rec(shape, v + 1, fill, rows, out);
                fill[r] -= 1;
            }
        }
    }
    rec(shape, 1, &mut fill, &mut rows, &mut out);
    Ok(out)
}

/// Fenwick tree over row lengths, used to draw a uniform cell.
#[derive(Debug, Clone)]
struct Fenwick {
    tree: Vec<usize>,
}

impl Fenwick {
    fn new(values: &[usize]) -> Fenwick {
        let mut tree = vec![0; values.len() + 1];
        for (i, &v) in values.iter().enumerate() {
            let mut k = i + 1;
            while k < tree.len() {
                tree[k] += v;
                k += k & k.wrapping_neg();
            }
        }
        Fenwick { tree }
    }

    fn decrement(&mut self, i: usize) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] -= 1;
            k += k & k.wrapping_neg();
        }
    }

    /// Smallest index `i` with `sum(values[..=i]) > r`.
    fn find(&self, mut r: usize) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= r {
                pos = next;
                r -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Greene–Nijenhuis–Wilf hook walk, run one corner at a time.
///
/// Each call to [`HookWalk::step`] removes the corner that receives the
/// current largest label. Stopping early yields the exact joint law of the
/// largest labels of a uniformly random standard tableau, which is all the
/// edge statistics need.
#[derive(Debug, Clone)]
pub struct HookWalk {
    rows: Vec<usize>,
    cols: Vec<usize>,
    fenwick: Fenwick,
    remaining: usize,
}

impl HookWalk {
    /// Starts a walk on the full shape.
    pub fn new(shape: &Shape) -> HookWalk {
        let rows = shape.rows().to_vec();
        let width = rows.first().copied().unwrap_or(0);
        let cols = (1..=width).map(|j| shape.col_len(j)).collect();
        HookWalk {
            fenwick: Fenwick::new(&rows),
            remaining: shape.size(),
            rows,
            cols,
        }
    }

    /// Number of cells not yet labelled.
    pub fn remaining(&self) -> usize {
        self.remaining
    }

    /// Current length of row `i` (1-based).
    pub fn row_len(&self, i: usize) -> usize {
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Whether cell `(i, j)` has already been labelled.
    pub fn is_labelled(&self, i: usize, j: usize) -> bool {
        j > self.row_len(i)
    }

    /// Labels one corner with the current largest label and returns
    /// `(i, j, label)`.
    pub fn step(&mut self, rng: &mut Rng) -> (usize, usize, u32) {
        assert!(self.remaining > 0, "hook walk on an empty shape");
        let r = rng.random_range(0..self.remaining);
        let mut i = self.fenwick.find(r);
        let mut j = rng.random_range(0..self.rows[i]);
        loop {
            let arm = self.rows[i] - j - 1;
            let leg = self.cols[j] - i - 1;
            if arm + leg == 0 {
                break;
            }
            let pick = rng.random_range(0..arm + leg);
            if pick < arm {
                j += pick + 1;
            } else {
                i += pick - arm + 1;
            }
        }
        let label = self.remaining as u32;
        self.rows[i] -= 1;
        self.cols[j] -= 1;
        self.fenwick.decrement(i);
        self.remaining -= 1;
        (i + 1, j + 1, label)
    }
}

/// A uniformly random standard tableau of the given shape.
pub fn sample_syt(shape: &Shape, rng: &mut Rng) -> StandardTableau {
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
    let mut walk = HookWalk::new(shape);
    while walk.remaining() > 0 {
        let (i, j, v) = walk.step(rng);
        rows[i - 1][j - 1] = v;
    }
    StandardTableau::from_rows_unchecked(shape.clone(), rows)
}

/// Replaces entry `k` by the `k`-th order statistic of `|λ|` independent
/// uniforms; the result is a uniformly random Poissonized tableau when the
/// input is uniform.
pub fn syt_to_pyt(t: &StandardTableau, rng: &mut Rng) -> PoissonizedTableau {
    let size = t.shape().size();
    let mut u: Vec<f64> = (0..size).map(|_| rng.random::<f64>()).collect();
    u.sort_by(|a, b| a.partial_cmp(b).expect("uniforms are finite"));
    if u.windows(2).any(|w| w[0] == w[1]) || u.first() == Some(&0.0) {
        // Probability zero in exact arithmetic; a tie means the generator is broken.
        panic!("tie among uniform order statistics");
    }
    let rows = t
        .rows()
        .iter()
        .map(|row| row.iter().map(|&v| u[v as usize - 1]).collect())
        .collect();
    PoissonizedTableau {
        shape: t.shape().clone(),
        rows,
    }
}

/// Recovers the standard tableau by ranking the entries.
pub fn pyt_to_syt(p: &PoissonizedTableau) -> StandardTableau {
    let mut cells: Vec<(f64, usize, usize)> = p
        .shape()
        .cells()
        .map(|(i, j)| (p.rows[i - 1][j - 1], i, j))
        .collect();
    cells.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("entries are finite"));
    let mut rows: Vec<Vec<u32>> = p.shape().rows().iter().map(|&l| vec![0; l]).collect();
    for (rank, &(_, i, j)) in cells.iter().enumerate() {
        rows[i - 1][j - 1] = rank as u32 + 1;
    }
    StandardTableau::from_rows_unchecked(p.shape().clone(), rows)
}

/// Rotated coordinates of a staircase cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotatedCoord {
    /// Level `l = n - i + j`, between 2 and `2n - 2`.
    pub l: usize,
    /// Rank within the level; `m = 1` is the cell nearest the staircase edge.
    pub m: usize,
}

/// Number of staircase cells on level `l`.
pub fn level_size(n: usize, l: usize) -> usize {
    l.min(2 * n - l) / 2
}

/// Maps `(i, j)` with `i + j <= n` to rotated coordinates.
pub fn rotate_coord(n: usize, i: usize, j: usize) -> Result<RotatedCoord> {
    if i < 1 || j < 1 || i + j > n {
        return domain(format!(
            "cell ({i},{j}) lies outside the staircase of size {n}"
        ));
    }
    let l = n - i + j;
    let d = n - i - j;
    let m = if d.is_multiple_of(2) {
        d / 2 + 1
    } else {
        d.div_ceil(2)
    };
    Ok(RotatedCoord { l, m })
}

/// Inverse of [`rotate_coord`].
pub fn unrotate_coord(n: usize, l: usize, m: usize) -> Result<(usize, usize)> {
    if n < 2 || l < 2 || l > 2 * n - 2 || m < 1 || m > level_size(n, l) {
        return domain(format!(
            "(l,m)=({l},{m}) is outside the staircase of size {n}"
        ));
    }
    // n - i - j has the parity of l.
    let d = if l.is_multiple_of(2) {
        2 * (m - 1)
    } else {
        2 * m - 1
    };
    let j = (l - d) / 2;
    let i = (2 * n - l - d) / 2;
    Ok((i, j))
}

/// Particles `(level, position)` grouped by level, positions ascending.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointConfig {
    /// Sorted positions per level.
    pub levels: BTreeMap<usize, Vec<f64>>,
}

impl PointConfig {
    /// Number of particles on a level.
    pub fn count(&self, level: usize) -> usize {
        self.levels.get(&level).map_or(0, Vec::len)
    }

    /// Whether every pair of consecutive levels weaves.
    pub fn is_interlacing(&self) -> bool {
        self.levels
            .iter()
            .zip(self.levels.iter().skip(1))
            .all(|((la, a), (lb, b))| lb != &(la + 1) || weaves(a, b))
    }
}

/// Whether two ascending lists alternate when merged.
pub fn weaves(a: &[f64], b: &[f64]) -> bool {
    let chain = |first: &[f64], second: &[f64]| {
        let mut merged = Vec::with_capacity(first.len() + second.len());
        for idx in 0..first.len().max(second.len()) {
            if let Some(&x) = first.get(idx) {
                merged.push(x);
            }
            if let Some(&y) = second.get(idx) {
                merged.push(y);
            }
        }
        merged.windows(2).all(|w| w[0] <= w[1])
    };
    match a.len() as isize - b.len() as isize {
        1 => chain(a, b),
        -1 => chain(b, a),
        0 => chain(a, b) || chain(b, a),
        _ => false,
    }
}

/// Projects a Poissonized staircase tableau: the cell at `(l, m)` becomes a
/// particle at `(l, sqrt(n) * (1 - entry))`.
pub fn project_points(p: &PoissonizedTableau, n: usize) -> Result<PointConfig> {
    match staircase_family(p.shape()) {
        Some(f) if f.n() == n => {}
        _ => {
            return domain(format!(
                "shape {:?} is neither Δ_{n} nor Δ_{n} minus a corner",
                p.shape().rows()
            ))
        }
    }
    let scale = (n as f64).sqrt();
    let mut levels: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (i, j) in p.shape().cells() {
        let rc = rotate_coord(n, i, j)?;
        levels
            .entry(rc.l)
            .or_default()
            .push(scale * (1.0 - p.rows[i - 1][j - 1]));
    }
    for v in levels.values_mut() {
        v.sort_by(|a, b| a.partial_cmp(b).expect("entries are finite"));
    }
    Ok(PointConfig { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::stream_rng;

    #[test]
    fn fenwick_find_locates_rows() {
        let f = Fenwick::new(&[3, 2, 1]);
        let rows: Vec<usize> = (0..6).map(|r| f.find(r)).collect();
        assert_eq!(rows, vec![0, 0, 0, 1, 1, 2]);
    }

    #[test]
    fn hook_walk_labels_every_cell_once() {
        let shape = make_staircase(6).unwrap();
        let t = sample_syt(&shape, &mut stream_rng(3, 0));
        assert!(StandardTableau::new(shape, t.rows().to_vec()).is_ok());
    }
}
