use nalgebra::DMatrix;
use sortedge::ague::*;
use sortedge::exec::stream_rng;
use sortedge::fredholm::SurvivalTable;
use sortedge::stats::{chi_square_test, erf, ks_one_sample_sorted, sorted};
use std::f64::consts::PI;

/// Coefficients `c_1..c_n` of `det(xI - A) = x^n + c_1 x^{n-1} + ... + c_n`
/// by the Faddeev–LeVerrier recursion.
fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let eye = DMatrix::<f64>::identity(n, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut c_prev = 1.0;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        m = a * &m + &eye * c_prev;
        let c = -(a * &m).trace() / k as f64;
        out.push(c);
        c_prev = c;
    }
    out
}

/// Real roots of a polynomial (highest degree first) on `[lo, hi]` by a sign
/// scan followed by bisection.
fn real_roots(coef: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let eval = |x: f64| coef.iter().fold(0.0, |acc, &c| acc * x + c);
    let steps = 200_000;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev = eval(lo);
    for s in 1..=steps {
        let x = lo + (hi - lo) * s as f64 / steps as f64;
        let v = eval(x);
        if prev == 0.0 || prev.signum() != v.signum() {
            let (mut a, mut b) = (prev_x, x);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if eval(a).signum() == eval(mid).signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev = v;
    }
    roots
}

#[test]
fn spectrum_agrees_with_a_characteristic_polynomial_oracle() {
    let mut rng = stream_rng(61, 0);
    for _ in 0..10 {
        let m = sample_antisym(6, &mut rng).unwrap();
        let c = char_poly(m.matrix());
        // Odd coefficients vanish; with s = σ², Π(x² + σ²) gives
        // s³ - c2 s² + c4 s - c6 = 0.
        assert!(c[0].abs() < 1e-10 && c[2].abs() < 1e-10 && c[4].abs() < 1e-10);
        let bound = m.matrix().iter().map(|v| v * v).sum::<f64>() + 1.0;
        let mut roots = real_roots(&[1.0, -c[1], c[3], -c[5]], 0.0, bound);
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let oracle: Vec<f64> = roots.iter().map(|s| s.sqrt()).collect();
        let spec = positive_spectrum(&m).unwrap();
        assert_eq!(oracle.len(), 3);
        for (a, b) in spec.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{spec:?} vs {oracle:?}");
        }
    }
}

#[test]
fn squared_spectrum_matches_the_frobenius_norm() {
    let mut rng = stream_rng(62, 0);
    for l in 2..=12 {
        let m = sample_antisym(l, &mut rng).unwrap();
        let frob: f64 = m.matrix().iter().map(|v| v * v).sum();
        let spec: f64 = positive_spectrum(&m)
            .unwrap()
            .iter()
            .map(|s| 2.0 * s * s)
            .sum();
        assert!((frob - spec).abs() <= 1e-8 * frob, "l = {l}");
    }
}

#[test]
fn samples_are_antisymmetric_with_zero_diagonal() {
    let mut rng = stream_rng(63, 0);
    let m = sample_antisym(7, &mut rng).unwrap();
    let a = m.matrix();
    assert_eq!(a, &(-a.transpose()));
    assert!((0..7).all(|i| a[(i, i)] == 0.0));
    let bad = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    assert!(AntisymRealMatrix::new(bad).is_err());
}

#[test]
fn odd_dimension_keeps_one_zero_eigenvalue() {
    let mut rng = stream_rng(64, 0);
    for _ in 0..20 {
        let m = sample_antisym(3, &mut rng).unwrap();
        let spec = positive_spectrum(&m).unwrap();
        assert_eq!(spec.len(), 1);
        // The determinant of an odd antisymmetric matrix is zero.
        assert!(m.matrix().determinant().abs() < 1e-10);
        let s = m.matrix().transpose() * m.matrix();
        let ev = s.symmetric_eigenvalues();
        let min = ev.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min.abs() < 1e-10);
    }
}

#[test]
fn entry_variance_and_absolute_gaussian_law() {
    let mut rng = stream_rng(65, 0);
    let draws = 100_000;
    let entries: Vec<f64> = (0..draws)
        .map(|_| sample_antisym(2, &mut rng).unwrap().matrix()[(1, 0)])
        .collect();
    let var = entries.iter().map(|x| x * x).sum::<f64>() / draws as f64;
    assert!((var - 0.5).abs() < 0.01, "{var}");
    // |N(0, 1/2)| has CDF erf(x).
    let abs = sorted(&entries.iter().map(|x| x.abs()).collect::<Vec<_>>());
    let ks = ks_one_sample_sorted(&abs, erf);
    assert!(ks < 0.01, "{ks}");
}

#[test]
fn corners_interlace_and_fill_levels() {
    let mut rng = stream_rng(66, 0);
    for _ in 0..10_000 {
        let c = sample_corners(8, &mut rng).unwrap();
        assert!(c.is_interlacing(1e-9));
        for l in 2..=8 {
            assert_eq!(c.level(l).len(), l / 2);
        }
    }
}

#[test]
fn smallest_eigenvalue_laws() {
    let draws = 100_000;
    let mut rng = stream_rng(67, 0);
    let one = sorted(
        &(0..draws)
            .map(|_| sample_tfs(1, &mut rng).unwrap())
            .collect::<Vec<_>>(),
    );
    assert!(one[0] > 0.0);
    assert!(ks_one_sample_sorted(&one, erf) < 0.01);

    let table = SurvivalTable::new(2, SurvivalTable::STEP).unwrap();
    let two = sorted(
        &(0..draws)
            .map(|_| sample_tfs(2, &mut rng).unwrap())
            .collect::<Vec<_>>(),
    );
    assert!(two[0] > 0.0);
    let ks = ks_one_sample_sorted(&two, |t| table.cdf(t));
    assert!(ks < 0.01, "{ks}");
}

#[test]
fn lower_levels_are_uniform_given_the_level_above() {
    let draws = 100_000;
    let mut rng = stream_rng(68, 0);
    let mut pit3 = Vec::with_capacity(draws);
    let mut pit2 = Vec::with_capacity(draws);
    for _ in 0..draws {
        let c = sample_corners(4, &mut rng).unwrap();
        let (u1, u2) = (c.level(4)[0], c.level(4)[1]);
        let v = c.level(3)[0];
        let w = c.level(2)[0];
        // The lower levels are jointly uniform on the interlacing array, so
        // level 3 carries the weight v of the level-2 range below it.
        pit3.push((v * v - u2 * u2) / (u1 * u1 - u2 * u2));
        pit2.push(w / v);
    }
    let uniform = |x: f64| x.clamp(0.0, 1.0);
    let ks3 = ks_one_sample_sorted(&sorted(&pit3), uniform);
    let ks2 = ks_one_sample_sorted(&sorted(&pit2), uniform);
    assert!(ks3 < 0.01, "{ks3}");
    assert!(ks2 < 0.01, "{ks2}");
}

#[test]
fn level_three_marginal_is_a_scaled_chi_law() {
    // The three entries above the diagonal are i.i.d. N(0, 1/2), so the
    // positive eigenvalue has density proportional to u^2 e^{-u^2}, with CDF
    // erf(x) - 2x e^{-x^2} / sqrt(pi).
    let mut rng = stream_rng(70, 0);
    let draws = 100_000;
    let v = sorted(
        &(0..draws)
            .map(|_| positive_spectrum(&sample_antisym(3, &mut rng).unwrap()).unwrap()[0])
            .collect::<Vec<_>>(),
    );
    let cdf = |x: f64| erf(x) - 2.0 * x * (-x * x).exp() / PI.sqrt();
    let ks = ks_one_sample_sorted(&v, cdf);
    assert!(ks < 0.01, "{ks}");
    let m = marginal_density_unnormalized(&[1.2], 3).unwrap();
    assert!((m - 1.44 * (-1.44f64).exp()).abs() < 1e-15);
}

#[test]
fn marginal_density_total_by_quadrature() {
    // Midpoint rule on the triangle u1 > u2 as an independent check of the
    // pi / 8 total used by the grid probabilities.
    let (steps, upper) = (1200, 7.0);
    let h = upper / steps as f64;
    let mut total = 0.0;
    for i in 0..steps {
        let u1 = (i as f64 + 0.5) * h;
        for j in 0..i {
            let u2 = (j as f64 + 0.5) * h;
            total += marginal_density_unnormalized(&[u1, u2], 4).unwrap();
        }
    }
    total *= h * h;
    assert!((total - PI / 8.0).abs() < 1e-5, "{total}");
}

#[test]
fn four_dimensional_joint_density_fits_a_grid_histogram() {
    let (bins, upper) = (20usize, 3.0);
    let probs = l4_cell_probabilities(bins, upper).unwrap();
    let draws = 100_000;
    let mut counts = vec![vec![0.0; bins]; bins];
    let mut overflow = 0.0;
    let mut rng = stream_rng(69, 0);
    for _ in 0..draws {
        let s = positive_spectrum(&sample_antisym(4, &mut rng).unwrap()).unwrap();
        if s[0] >= upper {
            overflow += 1.0;
            continue;
        }
        let cell = |x: f64| ((x / upper * bins as f64) as usize).min(bins - 1);
        counts[cell(s[0])][cell(s[1])] += 1.0;
    }
    let mut obs = Vec::new();
    let mut exp = Vec::new();
    for i in 0..bins {
        for j in 0..=i {
            obs.push(counts[i][j]);
            exp.push(probs[i][j] * draws as f64);
        }
    }
    let inside: f64 = exp.iter().sum::<f64>() / draws as f64;
    obs.push(overflow);
    exp.push((1.0 - inside) * draws as f64);
    let (stat, dof, p) = chi_square_test(&obs, &exp, 5.0);
    assert!(p > 1e-3, "chi2 = {stat} on {dof} dof, p = {p}");
}

#[test]
fn joint_density_small_cases() {
    let u: f64 = 0.8;
    assert!((joint_density_unnormalized(&[u], 2).unwrap() - (-u * u).exp()).abs() < 1e-15);
    assert!((joint_density_unnormalized(&[u], 3).unwrap() - u * (-u * u).exp()).abs() < 1e-15);
    let (a, b): (f64, f64) = (1.3, 0.4);
    let want = (a * a - b * b) * (-a * a - b * b).exp();
    assert!((joint_density_unnormalized(&[a, b], 4).unwrap() - want).abs() < 1e-15);
    assert!(joint_density_unnormalized(&[b, a], 4).is_err());
    assert!(joint_density_unnormalized(&[a], 4).is_err());
}

#[test]
fn normalising_integrals() {
    // Frozen from closed forms: the first two are Gaussian integrals, the
    // last two follow in polar coordinates.
    let cases = [(2, PI.sqrt() / 2.0), (3, 0.5), (4, 0.25), (5, 0.125)];
    for (l, want) in cases {
        let got = normalization_integral(l).unwrap();
        assert!((got - want).abs() < 1e-12, "l={l}: {got}");
    }
    assert!(normalization_integral(6).is_err());
}

#[test]
fn grid_probabilities_sum_to_the_covered_mass() {
    let probs = l4_cell_probabilities(40, 6.0).unwrap();
    let total: f64 = probs.iter().flatten().sum();
    assert!((total - 1.0).abs() < 1e-10, "{total}");
    assert!(probs
        .iter()
        .enumerate()
        .all(|(i, r)| r[i + 1..].iter().all(|&p| p == 0.0)));
}
