use sortedge::ague::sample_tfs;
use sortedge::exec::stream_rng;
use sortedge::fredholm::*;
use sortedge::kernels::kernel_k;
use sortedge::quad::adaptive;
use sortedge::spacings::double_factorial_ratio;
use sortedge::stats::erf;
use std::f64::consts::PI;

#[test]
fn rank_one_survival_is_the_error_function_tail() {
    for i in 0..=60 {
        let t = 0.05 * i as f64;
        let f = survival_tfs(1, t).unwrap();
        assert!((f - (1.0 - erf(t))).abs() < 1e-8, "t={t}");
    }
    assert!((survival_tfs(1, 0.5).unwrap() - 0.4795).abs() < 1e-4);
}

#[test]
fn survival_starts_at_one_and_decreases() {
    for k in 1..=4 {
        assert_eq!(survival_tfs(k, 0.0).unwrap(), 1.0);
        let mut prev = 1.0;
        for i in 1..=60 {
            let f = survival_tfs(k, 0.1 * i as f64).unwrap();
            assert!(f <= prev + 1e-15, "k={k}");
            prev = f;
        }
    }
    for k in 1..=3 {
        assert!(survival_tfs(k, 6.0).unwrap() < 1e-4);
    }
}

#[test]
fn gram_matrix_is_between_zero_and_identity() {
    for k in 1..=4 {
        for &t in &[0.0, 0.3, 1.0, 1.7, 3.0] {
            let st = gram_state(k, t).unwrap();
            assert!((&st.g - st.g.transpose()).amax() < 1e-14);
            let ev = st.g.clone().symmetric_eigenvalues();
            assert!(
                ev.iter().all(|&e| (-1e-12..=1.0 + 1e-12).contains(&e)),
                "k={k} t={t}"
            );
        }
    }
    assert!(gram_state(0, 1.0).is_err());
    assert!(gram_state(1, -1.0).is_err());
}

#[test]
fn analytic_derivative_matches_finite_differences() {
    let h = 1e-5;
    for k in 1..=4 {
        for &t in &[0.2, 0.7, 1.0, 1.5, 2.4] {
            let d = survival_derivative(k, t).unwrap();
            let fd =
                (survival_tfs(k, t + h).unwrap() - survival_tfs(k, t - h).unwrap()) / (2.0 * h);
            assert!((d - fd).abs() < 1e-6, "k={k} t={t}: {d} vs {fd}");
        }
    }
}

#[test]
fn derivative_at_zero_is_the_kernel_at_the_origin() {
    for k in 1..=5 {
        let d = survival_derivative(k, 0.0).unwrap();
        assert!((-d - kernel_k(k, 0.0, 0.0).unwrap()).abs() < 1e-8, "k={k}");
    }
}

#[test]
fn both_densities_have_unit_mass() {
    for k in 1..=4 {
        // Exact masses from the antiderivatives.
        assert!((g_mass(k, 0.0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-6);
        assert!((ghat_mass(k, 0.0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-6);
        // And by quadrature of the finite-difference densities.
        let g = adaptive(|x| density_g(k, x).unwrap(), 1e-6, 8.0, 1e-9, 1e-10).unwrap();
        let gh = adaptive(|x| density_ghat(k, x).unwrap(), 1e-6, 8.0, 1e-9, 1e-10).unwrap();
        assert!((g - 1.0).abs() < 1e-6, "k={k}: {g}");
        assert!((gh - 1.0).abs() < 1e-6, "k={k}: {gh}");
    }
}

#[test]
fn rank_one_densities_in_closed_form() {
    for &x in &[0.2, 0.5, 1.0, 1.8, 2.5] {
        let g = density_g(1, x).unwrap();
        assert!(
            (g - 4.0 * x * x * (-x * x).exp() / PI.sqrt()).abs() < 1e-6,
            "x={x}"
        );
        let gh = density_ghat(1, x).unwrap();
        assert!((gh - 2.0 * x * (-x * x).exp()).abs() < 1e-6, "x={x}");
    }
    assert!((density_g(1, 1.0).unwrap() - 0.8303).abs() < 1e-4);
    assert!((density_ghat(1, 1.0).unwrap() - 0.7358).abs() < 1e-4);
}

#[test]
fn densities_are_non_negative_and_in_fixed_ratio() {
    for k in 1..=3 {
        for i in 1..=40 {
            let x = 0.1 * i as f64;
            let g = density_g(k, x).unwrap();
            let gh = density_ghat(k, x).unwrap();
            assert!(g >= -1e-8 && gh >= -1e-8);
            if g > 1e-6 {
                let want = 0.5 * PI.sqrt() / double_factorial_ratio(k) / x;
                assert!((gh / g - want).abs() < 1e-6 * want, "k={k} x={x}");
            }
        }
    }
}

#[test]
fn prefactor_times_origin_kernel_is_one() {
    for k in 1..=6 {
        let v = ghat_prefactor(k) * kernel_k(k, 0.0, 0.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rank_two_survival_matches_sampled_spectra() {
    let draws = 100_000;
    let mut rng = stream_rng(81, 0);
    let samples: Vec<f64> = (0..draws)
        .map(|_| sample_tfs(2, &mut rng).unwrap())
        .collect();
    for i in 1..=8 {
        let t = 0.2 * i as f64;
        let emp = samples.iter().filter(|&&s| s > t).count() as f64 / draws as f64;
        let f = survival_tfs(2, t).unwrap();
        let se = (f * (1.0 - f) / draws as f64).sqrt();
        assert!((emp - f).abs() <= 3.0 * se, "t={t}: {emp} vs {f}");
    }
}

#[test]
fn survival_table_interpolates_and_integrates() {
    for k in 1..=3 {
        let tab = SurvivalTable::new(k, SurvivalTable::STEP).unwrap();
        assert_eq!(tab.k(), k);
        for &t in &[0.013, 0.5, 1.234, 2.71] {
            assert!((tab.survival(t) - survival_tfs(k, t).unwrap()).abs() < 1e-9);
        }
        assert_eq!(tab.survival(-1.0), 1.0);
        assert_eq!(tab.survival(tab.t_max() + 1.0), 0.0);
        let mean = adaptive(|t| survival_tfs(k, t).unwrap(), 0.0, 8.0, 1e-11, 1e-13).unwrap();
        assert!((tab.mean() - mean).abs() < 1e-8, "k={k}");
    }
}
