//! Seeded Monte Carlo campaigns that compare finite-`n` statistics with
//! their limit laws, and exhaustive identity checks for small `n`.
//!
//! Times are scaled by `n^{3/2} / 2`. The distance tolerances below are
//! calibration constants fixed after pre-runs; the limit theorems give no
//! rates, so they are engineering thresholds and are written into every
//! manifest.

use crate::ague::sample_corners;
use crate::error::{domain, Result};
use crate::exec::{map_chunks, sample_many, stream_rng, Exec};
use crate::fredholm::{g_mass, ghat_mass, ghat_prefactor, SurvivalTable};
use crate::sorting_network::{
    edelman_greene, enumerate_networks, network_length, shift, stanley_count, SortingNetwork,
};
use crate::spacings::{
    check_circle_relations, circle_from_networks, circle_stats, conditional_spacing_from_tableau,
    first_swap_from_tableau, first_swap_time, rho_by_counts, rho_exact, sample_conditional_spacing,
    sample_first_swap, sample_spacing, CircleMode,
};
use crate::stats::{
    bootstrap_se, histogram_with_overflow, ks_one_sample_sorted, ks_two_sample_sorted, sorted,
    total_variation, Statistic,
};
use crate::tableaux::{
    count_syt, enumerate_syt, level_size, make_staircase, make_staircase_minus, rotate_coord,
    weaves, HookWalk,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashSet};
use std::time::{SystemTime, UNIX_EPOCH};

/// KS tolerance for the first-swap law with `k = 1`.
pub const KS_FIRST_SWAP_K1: f64 = 0.03;
/// KS tolerance for the first-swap law with `k >= 2`.
pub const KS_FIRST_SWAP_K2: f64 = 0.04;
/// TV tolerance for both spacing laws.
pub const TV_SPACING: f64 = 0.05;
/// KS tolerance for the conditional spacing with `k = 1`.
pub const KS_CONDITIONAL_K1: f64 = 0.03;
/// Tolerance on the largest per-coordinate KS distance in the corners test.
pub const KS_CORNERS: f64 = 0.04;

/// Number of histogram bins used for TV distances (plus one overflow bin).
pub const TV_BINS: usize = 30;

/// Bootstrap resamples for one-dimensional statistics.
pub const BOOTSTRAP_REPS: usize = 200;

/// Bootstrap resamples per coordinate in the corners comparison.
pub const CORNERS_BOOTSTRAP_REPS: usize = 30;

/// Random stream reserved for bootstrap resampling; sampling streams are
/// numbered from zero by chunk.
const BOOTSTRAP_STREAM: u64 = u64::MAX;

/// The time scale `n^{3/2} / 2`.
pub fn time_scale(n: usize) -> f64 {
    (n as f64).powf(1.5) / 2.0
}

/// Parameters of a Monte Carlo campaign on sorting networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McParams {
    /// Number of wires.
    pub n: usize,
    /// Swap index.
    pub k: usize,
    /// Sample count.
    pub samples: usize,
    /// Master seed.
    pub seed: u64,
}

impl McParams {
    fn check(&self) -> Result<()> {
        if self.n < 3 || self.k < 1 || self.k >= self.n {
            return domain(format!(
                "need n >= 3 and 1 <= k < n, got n={}, k={}",
                self.n, self.k
            ));
        }
        if self.samples < 2 {
            return domain("need at least two samples");
        }
        Ok(())
    }
}

/// Provenance of one run. Rerunning with the same experiment and parameters
/// reproduces the statistics byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Experiment identifier.
    pub experiment: String,
    /// Parameters as given.
    pub params: serde_json::Value,
    /// Time scale `n^{3/2} / 2`, when the experiment has one.
    pub scale: Option<f64>,
    /// Calibration tolerances in force.
    pub tolerances: BTreeMap<String, f64>,
    /// SHA-256 of `experiment` and the canonical parameter JSON, hashed
    /// git-style with a length header.
    pub params_hash: String,
    /// Version of this crate.
    pub crate_version: String,
    /// Start time, seconds since the Unix epoch.
    pub started_unix: u64,
    /// End time, seconds since the Unix epoch; zero while running.
    pub finished_unix: u64,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Content hash of an experiment's parameters.
pub fn params_hash<P: Serialize>(experiment: &str, params: &P) -> Result<String> {
    let json = serde_json::to_string(params)
        .map_err(|e| crate::Error::Domain(format!("parameters do not serialise: {e}")))?;
    let body = format!("{experiment}\n{json}");
    let mut h = Sha256::new();
    h.update(format!("params {}\0", body.len()).as_bytes());
    h.update(body.as_bytes());
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

impl RunManifest {
    /// Starts a manifest for `experiment` with the given parameters.
    pub fn new<P: Serialize>(
        experiment: &str,
        params: &P,
        scale: Option<f64>,
        tolerances: &[(&str, f64)],
    ) -> Result<RunManifest> {
        let value = serde_json::to_value(params)
            .map_err(|e| crate::Error::Domain(format!("parameters do not serialise: {e}")))?;
        Ok(RunManifest {
            experiment: experiment.to_string(),
            params: value,
            scale,
            tolerances: tolerances
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            params_hash: params_hash(experiment, params)?,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix: unix_now(),
            finished_unix: 0,
        })
    }

    /// Stamps the end time.
    pub fn finish(&mut self) {
        self.finished_unix = unix_now();
    }
}

/// Mean and its standard error.
pub fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let m = x.len() as f64;
    let mean = x.iter().sum::<f64>() / m;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    (mean, (var / m).sqrt())
}

/// One-sample KS distance with a bootstrap standard error.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted_samples: &[f64], cdf: F, seed: u64) -> Statistic {
    let value = ks_one_sample_sorted(sorted_samples, &cdf);
    let mut rng = stream_rng(seed, BOOTSTRAP_STREAM);
    let se = bootstrap_se(sorted_samples, BOOTSTRAP_REPS, &mut rng, |b| {
        ks_one_sample_sorted(b, &cdf)
    });
    Statistic {
        value,
        bootstrap_se: se,
        samples: sorted_samples.len(),
    }
}

/// A histogram on `[0, upper)` plus an overflow bin, next to the exact bin
/// masses of the limit density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Upper end of the binned range.
    pub upper: f64,
    /// Observed relative frequencies, overflow last.
    pub observed: Vec<f64>,
    /// Limit probabilities of the same bins.
    pub expected: Vec<f64>,
}

impl Histogram {
    /// Bin edges `0, h, ..., upper`.
    pub fn edges(&self) -> Vec<f64> {
        let bins = self.observed.len() - 1;
        (0..=bins)
            .map(|i| self.upper * i as f64 / bins as f64)
            .collect()
    }

    /// CSV with columns `lo,hi,observed,expected`.
    pub fn to_csv(&self) -> String {
        let e = self.edges();
        let mut out = String::from("lo,hi,observed,expected\n");
        for (b, (o, x)) in self.observed.iter().zip(&self.expected).enumerate() {
            let (lo, hi) = if b + 1 < e.len() {
                (e[b], e[b + 1])
            } else {
                (self.upper, f64::INFINITY)
            };
            out.push_str(&format!("{lo},{hi},{o},{x}\n"));
        }
        out
    }
}

/// Which limit law a spacing histogram is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Law {
    G,
    Ghat,
}

fn law_tail(law: Law, k: usize, x: f64) -> Result<f64> {
    match law {
        Law::G => g_mass(k, x, f64::INFINITY),
        Law::Ghat => ghat_mass(k, x, f64::INFINITY),
    }
}

/// Smallest multiple of 0.5 beyond which the law has mass below 1e-3.
fn histogram_upper(law: Law, k: usize) -> Result<f64> {
    let mut x = 1.0;
    while law_tail(law, k, x)? > 1e-3 && x < 12.0 {
        x += 0.5;
    }
    Ok(x)
}

fn tv_histogram(law: Law, k: usize, samples: &[f64], seed: u64) -> Result<(Histogram, Statistic)> {
    let upper = histogram_upper(law, k)?;
    let edges: Vec<f64> = (0..=TV_BINS)
        .map(|i| upper * i as f64 / TV_BINS as f64)
        .collect();
    let mut expected = Vec::with_capacity(TV_BINS + 1);
    for w in edges.windows(2) {
        expected.push(match law {
            Law::G => g_mass(k, w[0], w[1])?,
            Law::Ghat => ghat_mass(k, w[0], w[1])?,
        });
    }
    expected.push(law_tail(law, k, upper)?);
    let observed = histogram_with_overflow(samples, TV_BINS, upper);
    let value = total_variation(&observed, &expected);
    let mut rng = stream_rng(seed, BOOTSTRAP_STREAM);
    let se = bootstrap_se(samples, BOOTSTRAP_REPS, &mut rng, |b| {
        total_variation(&histogram_with_overflow(b, TV_BINS, upper), &expected)
    });
    let stat = Statistic {
        value,
        bootstrap_se: se,
        samples: samples.len(),
    };
    Ok((
        Histogram {
            upper,
            observed,
            expected,
        },
        stat,
    ))
}

fn scaled_sorted(values: Vec<usize>, n: usize) -> Vec<f64> {
    let scale = time_scale(n);
    sorted(
        &values
            .into_iter()
            .map(|v| v as f64 / scale)
            .collect::<Vec<_>>(),
    )
}

fn collect<T>(v: Vec<Result<T>>) -> Result<Vec<T>> {
    v.into_iter().collect()
}

/// Scaled first-swap times against the Fredholm law of `T_FS(k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstSwapReport {
    /// Campaign parameters.
    pub params: McParams,
    /// Time scale.
    pub scale: f64,
    /// KS distance to the limit CDF.
    pub ks: Statistic,
    /// Tolerance for `ks`.
    pub tolerance: f64,
    /// Whether `ks <= tolerance + 3 SE`.
    pub passed: bool,
    /// Sample mean of the scaled times.
    pub mean: f64,
    /// Standard error of `mean`.
    pub mean_se: f64,
    /// `E[T_FS(k)]`.
    pub limit_mean: f64,
    /// Sorted scaled samples.
    #[serde(skip)]
    pub samples: Vec<f64>,
}

impl FirstSwapReport {
    /// CSV with columns `x,ecdf,cdf` at every sample.
    pub fn ecdf_csv(&self, table: &SurvivalTable) -> String {
        let m = self.samples.len() as f64;
        let mut out = String::from("x,ecdf,cdf\n");
        for (i, &x) in self.samples.iter().enumerate() {
            out.push_str(&format!("{x},{},{}\n", (i + 1) as f64 / m, table.cdf(x)));
        }
        out
    }
}

/// First-swap campaign: `2 T / n^{3/2}` against `P(T_FS(k) <= t)`.
pub fn mc_first_swap(p: McParams, exec: Exec) -> Result<FirstSwapReport> {
    p.check()?;
    let raw = collect(sample_many(exec, p.samples, p.seed, |rng| {
        sample_first_swap(p.n, p.k, rng)
    }))?;
    let samples = scaled_sorted(raw, p.n);
    let table = SurvivalTable::new(p.k, SurvivalTable::STEP)?;
    let ks = ks_statistic(&samples, |x| table.cdf(x), p.seed);
    let tolerance = if p.k == 1 {
        KS_FIRST_SWAP_K1
    } else {
        KS_FIRST_SWAP_K2
    };
    let (mean, mean_se) = mean_and_se(&samples);
    Ok(FirstSwapReport {
        params: p,
        scale: time_scale(p.n),
        passed: ks.value <= tolerance + 3.0 * ks.bootstrap_se,
        ks,
        tolerance,
        mean,
        mean_se,
        limit_mean: table.mean(),
        samples,
    })
}

/// Scaled spacings against a limit density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingMcReport {
    /// Campaign parameters.
    pub params: McParams,
    /// Time scale.
    pub scale: f64,
    /// Histogram next to the limit bin masses.
    pub histogram: Histogram,
    /// TV distance of the histogram to the limit.
    pub tv: Statistic,
    /// Tolerance for `tv`.
    pub tv_tolerance: f64,
    /// KS distance to the closed-form CDF `1 - e^{-x^2}`, for the
    /// conditional spacing with `k = 1` only.
    pub ks: Option<Statistic>,
    /// Tolerance for `ks`.
    pub ks_tolerance: Option<f64>,
    /// Whether every statistic is within tolerance plus 3 SE.
    pub passed: bool,
    /// Sample mean of the scaled spacing.
    pub mean: f64,
    /// Standard error of `mean`.
    pub mean_se: f64,
    /// Mean of the limit law.
    pub limit_mean: f64,
    /// Sorted scaled samples.
    #[serde(skip)]
    pub samples: Vec<f64>,
}

/// Anchor used by [`mc_spacing`]. The law of the spacing does not depend on
/// the anchor; one about `n^{3/2}` swaps into the network means the
/// preceding occurrence is almost always found without producing the whole
/// network.
pub fn spacing_anchor(n: usize) -> usize {
    ((n as f64).powf(1.5).round() as usize).clamp(1, network_length(n))
}

/// Spacing campaign: `2 Sp / n^{3/2}` against `g_k`.
pub fn mc_spacing(p: McParams, exec: Exec) -> Result<SpacingMcReport> {
    p.check()?;
    let anchor = spacing_anchor(p.n);
    let raw = collect(sample_many(exec, p.samples, p.seed, |rng| {
        sample_spacing(p.n, p.k, anchor, rng)
    }))?;
    let samples = scaled_sorted(raw, p.n);
    let (histogram, tv) = tv_histogram(Law::G, p.k, &samples, p.seed)?;
    let table = SurvivalTable::new(p.k, SurvivalTable::STEP)?;
    let (mean, mean_se) = mean_and_se(&samples);
    Ok(SpacingMcReport {
        params: p,
        scale: time_scale(p.n),
        histogram,
        passed: tv.value <= TV_SPACING + 3.0 * tv.bootstrap_se,
        tv,
        tv_tolerance: TV_SPACING,
        ks: None,
        ks_tolerance: None,
        mean,
        mean_se,
        // ∫ x g_k = ∫ x^2 F'' = 2 ∫ F.
        limit_mean: 2.0 * table.mean(),
        samples,
    })
}

/// Conditional spacing campaign: `2 Ŝp / n^{3/2}` against `ĝ_k`, and for
/// `k = 1` against the closed form `2x e^{-x^2}`.
pub fn mc_conditional_spacing(p: McParams, exec: Exec) -> Result<SpacingMcReport> {
    p.check()?;
    let raw = collect(sample_many(exec, p.samples, p.seed, |rng| {
        sample_conditional_spacing(p.n, p.k, rng)
    }))?;
    let samples = scaled_sorted(raw, p.n);
    let (histogram, tv) = tv_histogram(Law::Ghat, p.k, &samples, p.seed)?;
    let ks = (p.k == 1).then(|| ks_statistic(&samples, |x| 1.0 - (-x * x).exp(), p.seed));
    let ks_tolerance = ks.map(|_| KS_CONDITIONAL_K1);
    let ks_ok = ks.is_none_or(|s| s.value <= KS_CONDITIONAL_K1 + 3.0 * s.bootstrap_se);
    let (mean, mean_se) = mean_and_se(&samples);
    Ok(SpacingMcReport {
        params: p,
        scale: time_scale(p.n),
        histogram,
        passed: ks_ok && tv.value <= TV_SPACING + 3.0 * tv.bootstrap_se,
        tv,
        tv_tolerance: TV_SPACING,
        ks,
        ks_tolerance,
        mean,
        mean_se,
        // ∫ x ĝ_k = c_k ∫ x F'' = c_k.
        limit_mean: ghat_prefactor(p.k),
        samples,
    })
}

/// Parameters of the corners comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornersParams {
    /// Staircase size.
    pub n: usize,
    /// Highest level compared.
    pub levels: usize,
    /// Samples on each side.
    pub samples: usize,
    /// Master seed.
    pub seed: u64,
}

/// KS comparison of one coordinate `(l, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateKs {
    /// Level.
    pub l: usize,
    /// Rank within the level, `m = 1` nearest the edge.
    pub m: usize,
    /// Two-sample KS distance.
    pub ks: Statistic,
    /// Mean on the tableau side.
    pub tableau_mean: f64,
    /// Mean on the matrix side.
    pub ague_mean: f64,
}

/// Scaled tableau entries against anti-symmetric GUE corners.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornersReport {
    /// Campaign parameters.
    pub params: CornersParams,
    /// One row per coordinate.
    pub coords: Vec<CoordinateKs>,
    /// Largest KS distance.
    pub max_ks: f64,
    /// Tolerance for `max_ks`.
    pub tolerance: f64,
    /// Tableau samples whose levels failed to interlace.
    pub tableau_interlacing_failures: usize,
    /// Matrix samples whose corner spectra failed to interlace.
    pub ague_interlacing_failures: usize,
    /// Whether every check passed.
    pub passed: bool,
}

impl CornersReport {
    /// CSV with columns `l,m,ks,se,tableau_mean,ague_mean`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,m,ks,se,tableau_mean,ague_mean\n");
        for c in &self.coords {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.l, c.m, c.ks.value, c.ks.bootstrap_se, c.tableau_mean, c.ague_mean
            ));
        }
        out
    }
}

/// The coordinates `(l, m)` with `2 <= l <= levels`, in order.
fn corner_coords(n: usize, levels: usize) -> Vec<(usize, usize)> {
    (2..=levels)
        .flat_map(|l| (1..=level_size(n, l)).map(move |m| (l, m)))
        .collect()
}

/// Per-coordinate KS distances between `sqrt(n)(1 - T(l,m)/N)` over uniform
/// tableaux of `Δ_n` and the matching positive eigenvalue of the
/// anti-symmetric GUE corners.
pub fn mc_corners_vs_tableaux(p: CornersParams, exec: Exec) -> Result<CornersReport> {
    if p.n < 4 || p.levels < 2 || p.levels > p.n - 1 {
        return domain(format!(
            "need n >= 4 and 2 <= levels <= n - 1, got n={}, levels={}",
            p.n, p.levels
        ));
    }
    if p.samples < 2 {
        return domain("need at least two samples");
    }
    let (n, top) = (p.n, p.levels);
    let coords = corner_coords(n, top);
    let index: BTreeMap<(usize, usize), usize> =
        coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let shape = make_staircase(n)?;
    let big = network_length(n) as f64;
    let root_n = (n as f64).sqrt();

    // Tableau side: label only until every cell of the low levels is done.
    let tab_rows: Vec<Vec<f64>> = sample_many(exec, p.samples, p.seed, |rng| {
        let mut walk = HookWalk::new(&shape);
        let mut row = vec![f64::NAN; coords.len()];
        let mut left = coords.len();
        while left > 0 {
            let (i, j, label) = walk.step(rng);
            if n - i + j <= top {
                let rc = rotate_coord(n, i, j).expect("walk stays inside the staircase");
                row[index[&(rc.l, rc.m)]] = root_n * (1.0 - label as f64 / big);
                left -= 1;
            }
        }
        row
    });
    // Matrix side on an independent seed.
    let ague_seed = p.seed ^ 0x5851_f42d_4c95_7f2d;
    let ague_rows: Vec<Result<(Vec<f64>, bool)>> = sample_many(exec, p.samples, ague_seed, |rng| {
        let cfg = sample_corners(top, rng)?;
        let row = coords
            .iter()
            .map(|&(l, m)| {
                let lev = cfg.level(l);
                lev[lev.len() - m]
            })
            .collect();
        Ok((row, cfg.is_interlacing(1e-9)))
    });
    let ague_rows = collect(ague_rows)?;
    let ague_interlacing_failures = ague_rows.iter().filter(|(_, ok)| !ok).count();
    let tableau_interlacing_failures = tab_rows
        .iter()
        .filter(|row| {
            !(2..top).all(|l| {
                let pick = |l: usize| -> Vec<f64> {
                    (1..=level_size(n, l))
                        .map(|m| row[index[&(l, m)]])
                        .collect()
                };
                weaves(&pick(l), &pick(l + 1))
            })
        })
        .count();

    let columns: Vec<(Vec<f64>, Vec<f64>)> = (0..coords.len())
        .map(|c| {
            let a = sorted(&tab_rows.iter().map(|r| r[c]).collect::<Vec<_>>());
            let b = sorted(&ague_rows.iter().map(|(r, _)| r[c]).collect::<Vec<_>>());
            (a, b)
        })
        .collect();
    let stats: Vec<CoordinateKs> = map_chunks(exec, coords.len(), p.seed, |_, range, _| {
        range
            .map(|c| {
                let (a, b) = &columns[c];
                let value = ks_two_sample_sorted(a, b);
                let mut rng = stream_rng(p.seed ^ c as u64, BOOTSTRAP_STREAM);
                let mut reps = Vec::with_capacity(CORNERS_BOOTSTRAP_REPS);
                let draw = |src: &[f64], rng: &mut crate::Rng| {
                    use rand::Rng as _;
                    sorted(
                        &(0..src.len())
                            .map(|_| src[rng.random_range(0..src.len())])
                            .collect::<Vec<_>>(),
                    )
                };
                for _ in 0..CORNERS_BOOTSTRAP_REPS {
                    let ra = draw(a, &mut rng);
                    let rb = draw(b, &mut rng);
                    reps.push(ks_two_sample_sorted(&ra, &rb));
                }
                let (_, se_mean) = mean_and_se(&reps);
                let (l, m) = coords[c];
                CoordinateKs {
                    l,
                    m,
                    ks: Statistic {
                        value,
                        // Standard deviation of the replicates.
                        bootstrap_se: se_mean * (reps.len() as f64).sqrt(),
                        samples: p.samples,
                    },
                    tableau_mean: mean_and_se(a).0,
                    ague_mean: mean_and_se(b).0,
                }
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let max_ks = stats.iter().map(|c| c.ks.value).fold(0.0, f64::max);
    let worst_se = stats
        .iter()
        .max_by(|x, y| x.ks.value.total_cmp(&y.ks.value))
        .map_or(0.0, |c| c.ks.bootstrap_se);
    Ok(CornersReport {
        params: p,
        coords: stats,
        max_ks,
        tolerance: KS_CORNERS,
        passed: max_ks <= KS_CORNERS + 3.0 * worst_se
            && tableau_interlacing_failures == 0
            && ague_interlacing_failures == 0,
        tableau_interlacing_failures,
        ague_interlacing_failures,
    })
}

/// Outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactCheck {
    /// Check name.
    pub name: String,
    /// Whether it held exactly.
    pub passed: bool,
    /// The offending configuration, or a short summary on success.
    pub detail: String,
}

/// Results of [`exact_suite`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    /// Number of wires.
    pub n: usize,
    /// Individual checks in a fixed order.
    pub checks: Vec<ExactCheck>,
    /// Whether all checks passed.
    pub passed: bool,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> ExactCheck {
    ExactCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn law_of(values: impl Iterator<Item = usize>, len: usize) -> Vec<BigRational> {
    let mut counts = vec![0u64; len];
    let mut total = 0u64;
    for v in values {
        counts[v - 1] += 1;
        total += 1;
    }
    counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(total)))
        .collect()
}

fn network_json(net: &SortingNetwork) -> String {
    serde_json::to_string(net).unwrap_or_else(|_| format!("{:?}", net.swaps()))
}

/// Runs every exact identity on `n <= 5` wires with rational arithmetic.
pub fn exact_suite(n: usize) -> Result<ExactReport> {
    if !(3..=5).contains(&n) {
        return domain(format!("the exact suite covers 3 <= n <= 5, got {n}"));
    }
    let mut checks = Vec::new();
    let nets = enumerate_networks(n)?;
    let shape = make_staircase(n)?;
    let tabs = enumerate_syt(&shape)?;
    let stanley = stanley_count(n)?;
    let hook = count_syt(&shape);
    let counts_ok = stanley == hook && stanley == nets.len().into() && tabs.len() == nets.len();
    checks.push(check(
        "counts",
        counts_ok,
        format!(
            "stanley={stanley}, enumerated networks={}, hook formula={hook}, enumerated tableaux={}",
            nets.len(),
            tabs.len()
        ),
    ));

    // Edelman–Greene is a bijection onto the enumerated networks.
    let net_set: HashSet<Vec<u32>> = nets.iter().map(|s| s.swaps().to_vec()).collect();
    let mut images = HashSet::new();
    let mut bad = None;
    for t in &tabs {
        let img = edelman_greene(t)?;
        if !net_set.contains(img.swaps()) || !images.insert(img.swaps().to_vec()) {
            bad = Some(format!(
                "tableau {:?} maps to {}",
                t.rows(),
                network_json(&img)
            ));
            break;
        }
    }
    checks.push(check(
        "edelman_greene_bijection",
        bad.is_none() && images.len() == nets.len(),
        bad.unwrap_or_else(|| format!("{} distinct valid images", images.len())),
    ));

    let shift_bad = nets.iter().find(|s| !net_set.contains(shift(s).swaps()));
    checks.push(check(
        "shift_closure",
        shift_bad.is_none(),
        shift_bad.map_or_else(|| "closed".to_string(), network_json),
    ));

    for k in 1..n {
        let process = circle_from_networks(n, k, CircleMode::Exact)?;
        let report = circle_stats(&process)?;
        let res = check_circle_relations(&report);
        let first_bad = res.first.iter().position(|r| !r.is_zero());
        let second_bad = res.second.iter().position(|r| !r.is_zero());
        checks.push(check(
            format!("circle_relations_k{k}"),
            first_bad.is_none() && second_bad.is_none() && process.is_rotation_invariant(),
            match (first_bad, second_bad) {
                (Some(l), _) => format!("first identity fails at ell={}: {}", l + 1, res.first[l]),
                (_, Some(l)) => {
                    format!("second identity fails at ell={}: {}", l + 1, res.second[l])
                }
                _ if !process.is_rotation_invariant() => "process is not rotation invariant".into(),
                _ => format!("{} residuals vanish", 2 * res.first.len()),
            },
        ));

        let rho_h = rho_exact(n, k)?;
        let rho_c = rho_by_counts(n, k)?;
        checks.push(check(
            format!("rho_k{k}"),
            rho_h == rho_c && rho_h == report.rho,
            format!("hooks={rho_h}, counts={rho_c}, circle={}", report.rho),
        ));

        // First swap through the network and through the tableau entry.
        let mut mismatch = None;
        for t in &tabs {
            let net = edelman_greene(t)?;
            let (a, b) = (first_swap_time(&net, k)?, first_swap_from_tableau(t, k)?);
            if a != b {
                mismatch = Some(format!("tableau {:?}: network {a}, tableau {b}", t.rows()));
                break;
            }
        }
        let k_len = process.len();
        let tab_law = law_of(
            tabs.iter()
                .map(|t| first_swap_from_tableau(t, k).expect("valid k")),
            k_len,
        );
        let law_ok = tab_law[..] == report.g[..k_len];
        checks.push(check(
            format!("first_swap_k{k}"),
            mismatch.is_none() && law_ok,
            mismatch.unwrap_or_else(|| {
                if law_ok {
                    "agrees per tableau and in law".into()
                } else {
                    "tableau law differs from the circle waiting-time law".into()
                }
            }),
        ));

        // Conditional spacing through tableaux of the shape minus a corner.
        let minus = make_staircase_minus(n, k)?;
        let minus_tabs = enumerate_syt(&minus)?;
        let cond_law = law_of(
            minus_tabs
                .iter()
                .map(|t| conditional_spacing_from_tableau(t, n, k).expect("shape matches")),
            k_len,
        );
        checks.push(check(
            format!("conditional_spacing_k{k}"),
            cond_law == report.f2,
            if cond_law == report.f2 {
                format!("{} tableaux reproduce the law", minus_tabs.len())
            } else {
                "tableau law differs from the circle conditional spacing".into()
            },
        ));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(ExactReport { n, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_hash_depends_on_every_field() {
        let p = McParams {
            n: 10,
            k: 1,
            samples: 5,
            seed: 1,
        };
        let h = params_hash("first_swap", &p).unwrap();
        assert_eq!(h.len(), 64);
        assert_ne!(
            h,
            params_hash("first_swap", &McParams { seed: 2, ..p }).unwrap()
        );
        assert_ne!(h, params_hash("spacing", &p).unwrap());
    }

    #[test]
    fn corner_coordinates_up_to_level_six() {
        assert_eq!(
            corner_coords(300, 6),
            vec![
                (2, 1),
                (3, 1),
                (4, 1),
                (4, 2),
                (5, 1),
                (5, 2),
                (6, 1),
                (6, 2),
                (6, 3)
            ]
        );
    }
}
