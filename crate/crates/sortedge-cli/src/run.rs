//! Execution of each command: manifest first, then results, then the
//! manifest again with its end time and a replay script.

use crate::args::*;
use crate::error::CliError;
use serde::Serialize;
use sortedge::ague::sample_corners;
use sortedge::exec::sample_many;
use sortedge::experiments::*;
use sortedge::fredholm::{density_g, density_ghat, survival_tfs, SurvivalTable};
use sortedge::kernels::contour::{finite_n_table, limit_table, DEFAULT_TRUNC};
use sortedge::kernels::{
    corners_kernel, kernel_k, limiting_kernel_hermite, limiting_kernel_series, KernelFamily,
};
use sortedge::sorting_network::{is_sorting_network, sample_network, wiring_svg, SortingNetwork};
use sortedge::spacings::{circle_from_networks, circle_stats, CircleMode};
use sortedge::stats::erf;
use sortedge::tableaux::{
    make_staircase, make_staircase_minus, sample_syt, Shape, StaircaseFamily, StandardTableau,
};
use sortedge::Exec;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// Tolerance of closed-form comparisons in tables of `F`.
const ERF_TOL: f64 = 1e-8;
/// Tolerance between the series and Hermite forms of the limiting kernel.
const SERIES_TOL: f64 = 1e-8;
/// Tolerance of closed-form comparisons in density tables.
const DENSITY_TOL: f64 = 1e-6;
/// Series length of the corners kernel below the diagonal when not given.
const CORNERS_TRUNC: usize = 20;

/// Where results go and how Monte Carlo work is scheduled.
pub struct Ctx {
    pub out_dir: PathBuf,
    pub exec: Exec,
}

impl Ctx {
    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn write(&self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        let p = self.path(name);
        fs::write(&p, text)?;
        Ok(p)
    }

    fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, CliError> {
        self.write(name, &(serde_json::to_string_pretty(value)? + "\n"))
    }
}

/// Whether the checks of a run held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Passed => "PASS",
            Outcome::Failed => "FAIL",
        }
    }
}

const REPRO: &str = r#"#!/bin/sh
# Replays the run recorded in manifest.json next to this script.
# Usage: repro.sh [OUT_DIR]. Set SORTEDGE if the binary is not on PATH.
set -e
here=$(cd "$(dirname "$0")" && pwd)
exec "${SORTEDGE:-sortedge}" --out-dir "${1:-$here/replay}" replay "$here/manifest.json"
"#;

/// Runs `cmd`, writing `manifest.json` before any result.
pub fn run(cmd: &Command, ctx: &Ctx) -> Result<Outcome, CliError> {
    if let Command::Replay(r) = cmd {
        return replay(r, ctx);
    }
    fs::create_dir_all(&ctx.out_dir)?;
    let (scale, tolerances) = manifest_info(cmd);
    let tol_refs: Vec<(&str, f64)> = tolerances.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let mut manifest = RunManifest::new(cmd.id(), cmd, scale, &tol_refs)?;
    ctx.write_json("manifest.json", &manifest)?;
    let outcome = match cmd {
        Command::Sample(SampleCmd::Network(a)) => sample_networks(a, ctx)?,
        Command::Sample(SampleCmd::Syt(a)) => sample_tableaux(a, ctx)?,
        Command::Sample(SampleCmd::Ague(a)) => sample_spectra(a, ctx)?,
        Command::Analyze(AnalyzeCmd::Fredholm(a)) => analyze_fredholm(a, ctx)?,
        Command::Analyze(AnalyzeCmd::Kernel(a)) => analyze_kernel(a, ctx)?,
        Command::Analyze(AnalyzeCmd::Density(a)) => analyze_density(a, ctx)?,
        Command::Experiment(ExperimentCmd::Exact(a)) => experiment_exact(a, ctx)?,
        Command::Experiment(ExperimentCmd::FirstSwap(a)) => experiment_first_swap(a, ctx)?,
        Command::Experiment(ExperimentCmd::Spacing(a)) => experiment_spacing(a, false, ctx)?,
        Command::Experiment(ExperimentCmd::ConditionalSpacing(a)) => {
            experiment_spacing(a, true, ctx)?
        }
        Command::Experiment(ExperimentCmd::Corners(a)) => experiment_corners(a, ctx)?,
        Command::Wiring(a) => wiring(a, ctx)?,
        Command::Replay(_) => unreachable!("handled above"),
    };
    manifest.finish();
    ctx.write_json("manifest.json", &manifest)?;
    let script = ctx.write("repro.sh", REPRO)?;
    make_executable(&script)?;
    println!("manifest: {}", ctx.path("manifest.json").display());
    Ok(outcome)
}

#[cfg(unix)]
fn make_executable(p: &Path) -> Result<(), CliError> {
    use std::os::unix::fs::PermissionsExt;
    fs::set_permissions(p, fs::Permissions::from_mode(0o755))?;
    Ok(())
}

#[cfg(not(unix))]
fn make_executable(_: &Path) -> Result<(), CliError> {
    Ok(())
}

fn replay(r: &ReplayArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&r.manifest).map_err(|e| {
        CliError::Usage(format!(
            "cannot read manifest {}: {e}",
            r.manifest.display()
        ))
    })?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("not a manifest: {e}")))?;
    let cmd: Command = serde_json::from_value(manifest.params.clone())
        .map_err(|e| CliError::Usage(format!("manifest parameters are not a command: {e}")))?;
    if matches!(cmd, Command::Replay(_)) || cmd.id() != manifest.experiment {
        return Err(CliError::Usage(
            "manifest does not describe a replayable run".into(),
        ));
    }
    if params_hash(cmd.id(), &cmd)? != manifest.params_hash {
        return Err(CliError::Usage(
            "manifest parameters do not match their hash".into(),
        ));
    }
    run(&cmd, ctx)
}

fn manifest_info(cmd: &Command) -> (Option<f64>, Vec<(String, f64)>) {
    let t = |k: &str, v: f64| vec![(k.to_string(), v)];
    match cmd {
        Command::Analyze(AnalyzeCmd::Fredholm(a)) if a.k == 1 => (None, t("erf", ERF_TOL)),
        Command::Analyze(AnalyzeCmd::Kernel(a)) if a.family == FamilyName::Limiting => {
            (None, t("series_vs_hermite", SERIES_TOL))
        }
        Command::Analyze(AnalyzeCmd::Density(a)) if a.k == 1 => {
            (None, t("closed_form", DENSITY_TOL))
        }
        Command::Experiment(ExperimentCmd::FirstSwap(a)) => {
            let base = if a.k == 1 {
                KS_FIRST_SWAP_K1
            } else {
                KS_FIRST_SWAP_K2
            };
            (Some(time_scale(a.n)), t("ks", a.tolerance.unwrap_or(base)))
        }
        Command::Experiment(ExperimentCmd::Spacing(a)) => (
            Some(time_scale(a.n)),
            t("tv", a.tolerance.unwrap_or(TV_SPACING)),
        ),
        Command::Experiment(ExperimentCmd::ConditionalSpacing(a)) => {
            let mut v = t("tv", a.tolerance.unwrap_or(TV_SPACING));
            if a.k == 1 {
                v.push(("ks".into(), KS_CONDITIONAL_K1));
            }
            (Some(time_scale(a.n)), v)
        }
        Command::Experiment(ExperimentCmd::Corners(a)) => {
            (None, t("max_ks", a.tolerance.unwrap_or(KS_CORNERS)))
        }
        _ => (None, Vec::new()),
    }
}

fn collect<T>(v: Vec<sortedge::Result<T>>) -> Result<Vec<T>, CliError> {
    Ok(v.into_iter().collect::<sortedge::Result<Vec<T>>>()?)
}

fn sample_networks(a: &SampleNetworkArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let nets = collect(sample_many(ctx.exec, a.count, a.seed, |rng| {
        sample_network(a.n, rng)
    }))?;
    for net in &nets {
        if !is_sorting_network(net.n(), net.swaps())? {
            return Err(CliError::Numeric(
                "sampler produced an invalid network".into(),
            ));
        }
    }
    let path = match a.format {
        Format::Json => ctx.write_json("networks.json", &nets)?,
        Format::Csv => {
            let mut out = String::from("sample_id,n,swaps\n");
            for (i, net) in nets.iter().enumerate() {
                let swaps: Vec<String> = net.swaps().iter().map(u32::to_string).collect();
                writeln!(out, "{i},{},{}", net.n(), swaps.join(" ")).expect("write to string");
            }
            ctx.write("networks.csv", &out)?
        }
    };
    println!(
        "{} networks on {} wires: {}",
        nets.len(),
        a.n,
        path.display()
    );
    Ok(Outcome::Passed)
}

/// Parses `staircase:N`, `staircase-minus:N,K` or `rows:R1,R2,...`.
pub fn parse_shape(spec: &str) -> Result<Shape, CliError> {
    let bad = || CliError::Usage(format!("unrecognised shape {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums = rest
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = match (kind, nums.as_slice()) {
        ("staircase", &[n]) => make_staircase(n)?,
        ("staircase-minus", &[n, k]) => make_staircase_minus(n, k)?,
        ("rows", rows) => Shape::new(rows.to_vec())?,
        _ => return Err(bad()),
    };
    Ok(shape)
}

fn sample_tableaux(a: &SampleSytArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = parse_shape(&a.shape)?;
    let tabs = sample_many(ctx.exec, a.count, a.seed, |rng| sample_syt(&shape, rng));
    for t in &tabs {
        StandardTableau::new(shape.clone(), t.rows().to_vec())?;
    }
    let path = match a.format {
        Format::Json => ctx.write_json("tableaux.json", &tabs)?,
        Format::Csv => {
            let mut out = String::from("sample_id,i,j,value\n");
            for (s, t) in tabs.iter().enumerate() {
                for (i, row) in t.rows().iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        writeln!(out, "{s},{},{},{v}", i + 1, j + 1).expect("write to string");
                    }
                }
            }
            ctx.write("tableaux.csv", &out)?
        }
    };
    println!(
        "{} tableaux of shape {:?}: {}",
        tabs.len(),
        shape.rows(),
        path.display()
    );
    Ok(Outcome::Passed)
}

fn sample_spectra(a: &SampleAgueArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let configs = collect(sample_many(ctx.exec, a.count, a.seed, |rng| {
        sample_corners(a.dim, rng)
    }))?;
    // Rank 1 is the smallest positive eigenvalue, the one nearest the edge.
    let mut out = String::from("sample_id,level,rank,value\n");
    for (s, c) in configs.iter().enumerate() {
        if !c.is_interlacing(1e-9) {
            return Err(CliError::Numeric(format!("sample {s} does not interlace")));
        }
        for l in 2..=a.dim {
            for (r, v) in c.level(l).iter().rev().enumerate() {
                writeln!(out, "{s},{l},{},{v}", r + 1).expect("write to string");
            }
        }
    }
    let path = ctx.write("spectra.csv", &out)?;
    println!(
        "{} corner spectra up to level {}: {}",
        configs.len(),
        a.dim,
        path.display()
    );
    Ok(Outcome::Passed)
}

fn grid(hi: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if step.is_nan() || step <= 0.0 || !hi.is_finite() || hi < 0.0 {
        return Err(CliError::Usage(
            "need a positive step and a finite non-negative end".into(),
        ));
    }
    let m = (hi / step + 1e-9).floor() as usize;
    Ok((0..=m).map(|i| i as f64 * step).collect())
}

#[derive(Serialize)]
struct TableSummary {
    rows: usize,
    /// Largest deviation from the closed form, when one exists.
    max_error: Option<f64>,
    tolerance: Option<f64>,
    passed: bool,
}

fn summarise(ctx: &Ctx, rows: usize, err: Option<f64>, tol: f64) -> Result<Outcome, CliError> {
    let passed = err.is_none_or(|e| e <= tol);
    ctx.write_json(
        "summary.json",
        &TableSummary {
            rows,
            max_error: err,
            tolerance: err.map(|_| tol),
            passed,
        },
    )?;
    Ok(Outcome::from_bool(passed))
}

fn analyze_fredholm(a: &FredholmArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let ts = grid(a.tmax, a.step)?;
    let mut out = String::from("t,F,g,ghat\n");
    let mut err: f64 = 0.0;
    for &t in &ts {
        let f = survival_tfs(a.k, t)?;
        let (g, gh) = (density_g(a.k, t)?, density_ghat(a.k, t)?);
        writeln!(out, "{t},{f},{g},{gh}").expect("write to string");
        err = err.max((f - (1.0 - erf(t))).abs());
    }
    let path = ctx.write("fredholm.csv", &out)?;
    let err = (a.k == 1).then_some(err);
    let outcome = summarise(ctx, ts.len(), err, ERF_TOL)?;
    println!("{} rows: {}", ts.len(), path.display());
    if let Some(e) = err {
        println!("max |F - (1 - erf)| = {e:.2e} {}", outcome.label());
    }
    Ok(outcome)
}

/// A kernel evaluated at `(u1, u2)` on fixed levels.
type Eval<'a> = Box<dyn Fn(f64, f64) -> sortedge::Result<f64> + 'a>;

fn analyze_kernel(a: &KernelArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    if a.grid < 2 {
        return Err(CliError::Usage("grid needs at least two points".into()));
    }
    let x1 = a.x1.unwrap_or(2 * a.k);
    let x2 = a.x2.unwrap_or(x1);
    let umax = match (a.umax, a.family, a.n) {
        (Some(u), _, _) => u,
        (None, FamilyName::Finite, Some(n)) => (n as f64).sqrt(),
        _ => 3.0,
    };
    if !umax.is_finite() || umax <= 0.0 {
        return Err(CliError::Usage("umax must be positive".into()));
    }
    let us: Vec<f64> = (0..a.grid)
        .map(|i| umax * i as f64 / (a.grid - 1) as f64)
        .collect();
    let trunc = a.trunc.unwrap_or(DEFAULT_TRUNC);
    let (family, eval): (KernelFamily, Eval) = match a.family {
        FamilyName::Limiting => (
            KernelFamily::LimitingHermite { k: a.k },
            Box::new(|u, v| limiting_kernel_hermite(a.k, u, v)),
        ),
        FamilyName::KernelK => (
            KernelFamily::KernelK { k: a.k },
            Box::new(|u, v| kernel_k(a.k, u, v)),
        ),
        FamilyName::Residue => {
            let t = limit_table(None, x1, x2, umax, trunc)?;
            (
                KernelFamily::LimitingResidue { trunc },
                Box::new(move |u, v| Ok(t.eval(u, v))),
            )
        }
        FamilyName::Conditioned => {
            let t = limit_table(Some(a.k), x1, x2, umax, trunc)?;
            (
                KernelFamily::Conditioned { k: a.k, trunc },
                Box::new(move |u, v| Ok(t.eval(u, v))),
            )
        }
        FamilyName::Corners => {
            let trunc = a.trunc.unwrap_or(CORNERS_TRUNC);
            (
                KernelFamily::Corners { trunc },
                Box::new(move |u, v| corners_kernel(x1, u, x2, v, trunc)),
            )
        }
        FamilyName::Finite => {
            let n =
                a.n.ok_or_else(|| CliError::Usage("the finite family needs --n".into()))?;
            let staircase = match a.minus_k {
                None => StaircaseFamily::Full { n },
                Some(k) => StaircaseFamily::MinusCorner { n, k },
            };
            let t = finite_n_table(staircase, x1, x2)?;
            (
                KernelFamily::FiniteN {
                    n,
                    minus_k: a.minus_k,
                },
                Box::new(move |u, v| Ok(t.eval(u, v))),
            )
        }
    };
    let limiting = a.family == FamilyName::Limiting;
    let mut out = String::from(if limiting {
        "u1,u2,value,series,hermite\n"
    } else {
        "u1,u2,value\n"
    });
    let mut err: f64 = 0.0;
    for &u in &us {
        for &v in &us {
            let value = eval(u, v)?;
            if limiting {
                let s = limiting_kernel_series(a.k, u, v, a.i_max)?;
                err = err.max((s - value).abs());
                writeln!(out, "{u},{v},{value},{s},{value}").expect("write to string");
            } else {
                writeln!(out, "{u},{v},{value}").expect("write to string");
            }
        }
    }
    let path = ctx.write("kernel.csv", &out)?;
    #[derive(Serialize)]
    struct Meta {
        family: KernelFamily,
        levels: [usize; 2],
        grid: usize,
        umax: f64,
        series_i_max: Option<usize>,
    }
    ctx.write_json(
        "kernel.json",
        &Meta {
            family,
            levels: [x1, x2],
            grid: a.grid,
            umax,
            series_i_max: limiting.then_some(a.i_max),
        },
    )?;
    let err = limiting.then_some(err);
    let outcome = summarise(ctx, us.len() * us.len(), err, SERIES_TOL)?;
    println!(
        "{} kernel on a {}x{} grid: {}",
        family.name(),
        a.grid,
        a.grid,
        path.display()
    );
    if let Some(e) = err {
        println!("max |series - hermite| = {e:.2e} {}", outcome.label());
    }
    Ok(outcome)
}

fn analyze_density(a: &DensityArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let xs = grid(a.xmax, a.step)?;
    let closed = |x: f64| match a.which {
        Which::G => 4.0 * x * x * (-x * x).exp() / std::f64::consts::PI.sqrt(),
        Which::Ghat => 2.0 * x * (-x * x).exp(),
    };
    let with_closed = a.k == 1;
    let mut out = String::from(if with_closed {
        "x,value,closed_form\n"
    } else {
        "x,value\n"
    });
    let mut err: f64 = 0.0;
    for &x in &xs {
        let v = match a.which {
            Which::G => density_g(a.k, x)?,
            Which::Ghat => density_ghat(a.k, x)?,
        };
        if with_closed {
            err = err.max((v - closed(x)).abs());
            writeln!(out, "{x},{v},{}", closed(x)).expect("write to string");
        } else {
            writeln!(out, "{x},{v}").expect("write to string");
        }
    }
    let path = ctx.write("density.csv", &out)?;
    let err = with_closed.then_some(err);
    let outcome = summarise(ctx, xs.len(), err, DENSITY_TOL)?;
    println!("{} rows: {}", xs.len(), path.display());
    if let Some(e) = err {
        println!(
            "max deviation from the closed form = {e:.2e} {}",
            outcome.label()
        );
    }
    Ok(outcome)
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn experiment_exact(a: &ExactArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let report = exact_suite(a.n)?;
    ctx.write_json("summary.json", &report)?;
    let mut out = String::from("name,passed,detail\n");
    for c in &report.checks {
        writeln!(out, "{},{},{}", c.name, c.passed, csv_quote(&c.detail)).expect("write to string");
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    ctx.write("checks.csv", &out)?;
    for k in 1..a.n {
        let r = circle_stats(&circle_from_networks(a.n, k, CircleMode::Exact)?)?;
        ctx.write(&format!("circle_k{k}.csv"), &r.to_csv())?;
    }
    Ok(Outcome::from_bool(report.passed))
}

fn mc_params(a: &McArgs) -> McParams {
    McParams {
        n: a.n,
        k: a.k,
        samples: a.samples,
        seed: a.seed,
    }
}

fn samples_csv(xs: &[f64]) -> String {
    let mut out = String::from("x\n");
    for x in xs {
        writeln!(out, "{x}").expect("write to string");
    }
    out
}

fn experiment_first_swap(a: &McArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut r = mc_first_swap(mc_params(a), ctx.exec)?;
    if let Some(t) = a.tolerance {
        r.tolerance = t;
        r.passed = r.ks.value <= t + 3.0 * r.ks.bootstrap_se;
    }
    ctx.write_json("summary.json", &r)?;
    let table = SurvivalTable::new(a.k, SurvivalTable::STEP)?;
    let m = r.samples.len() as f64;
    let mut out = String::from("t,ecdf,cdf\n");
    for t in grid(3.0, 0.01)? {
        let below = r.samples.partition_point(|&x| x <= t) as f64;
        writeln!(out, "{t},{},{}", below / m, table.cdf(t)).expect("write to string");
    }
    ctx.write("cdf.csv", &out)?;
    if a.samples_csv {
        ctx.write("samples.csv", &r.ecdf_csv(&table))?;
    }
    let outcome = Outcome::from_bool(r.passed);
    println!(
        "first swap n={} k={}: KS {:.4} (se {:.4}, tolerance {}) mean {:.4} vs {:.4} {}",
        a.n,
        a.k,
        r.ks.value,
        r.ks.bootstrap_se,
        r.tolerance,
        r.mean,
        r.limit_mean,
        outcome.label()
    );
    Ok(outcome)
}

fn experiment_spacing(a: &McArgs, conditional: bool, ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = mc_params(a);
    let mut r = if conditional {
        mc_conditional_spacing(p, ctx.exec)?
    } else {
        mc_spacing(p, ctx.exec)?
    };
    if let Some(t) = a.tolerance {
        r.tv_tolerance = t;
        let ks_ok = match (r.ks, r.ks_tolerance) {
            (Some(s), Some(tol)) => s.value <= tol + 3.0 * s.bootstrap_se,
            _ => true,
        };
        r.passed = ks_ok && r.tv.value <= t + 3.0 * r.tv.bootstrap_se;
    }
    ctx.write_json("summary.json", &r)?;
    ctx.write("histogram.csv", &r.histogram.to_csv())?;
    if a.samples_csv {
        ctx.write("samples.csv", &samples_csv(&r.samples))?;
    }
    let outcome = Outcome::from_bool(r.passed);
    let ks =
        r.ks.map_or(String::new(), |s| format!(", KS {:.4}", s.value));
    println!(
        "{} n={} k={}: TV {:.4} (se {:.4}, tolerance {}){ks} mean {:.4} vs {:.4} {}",
        if conditional {
            "conditional spacing"
        } else {
            "spacing"
        },
        a.n,
        a.k,
        r.tv.value,
        r.tv.bootstrap_se,
        r.tv_tolerance,
        r.mean,
        r.limit_mean,
        outcome.label()
    );
    Ok(outcome)
}

fn experiment_corners(a: &CornersArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = CornersParams {
        n: a.n,
        levels: a.levels,
        samples: a.samples,
        seed: a.seed,
    };
    let mut r = mc_corners_vs_tableaux(p, ctx.exec)?;
    if let Some(t) = a.tolerance {
        r.tolerance = t;
        let worst_se = r
            .coords
            .iter()
            .max_by(|x, y| x.ks.value.total_cmp(&y.ks.value))
            .map_or(0.0, |c| c.ks.bootstrap_se);
        r.passed = r.max_ks <= t + 3.0 * worst_se
            && r.tableau_interlacing_failures == 0
            && r.ague_interlacing_failures == 0;
    }
    ctx.write_json("summary.json", &r)?;
    ctx.write("corners.csv", &r.to_csv())?;
    let outcome = Outcome::from_bool(r.passed);
    println!(
        "corners n={} levels<={}: max KS {:.4} over {} coordinates (tolerance {}) {}",
        a.n,
        a.levels,
        r.max_ks,
        r.coords.len(),
        r.tolerance,
        outcome.label()
    );
    Ok(outcome)
}

fn wiring(a: &WiringArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let net = SortingNetwork::new(a.n, a.network.clone())?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(&a.out, wiring_svg(&net))?;
    ctx.write_json("summary.json", &net)?;
    println!(
        "wiring diagram of {} swaps on {} wires: {}",
        net.len(),
        a.n,
        a.out.display()
    );
    Ok(Outcome::Passed)
}
