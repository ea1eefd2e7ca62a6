use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use sortedge::exec::stream_rng;
use sortedge::sorting_network::{enumerate_networks, network_length, sample_network};
use sortedge::spacings::*;
use sortedge::stats::chi_square_test;
use sortedge::tableaux::{enumerate_syt, make_staircase, make_staircase_minus, sample_syt};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn circle_identities_hold_exactly_for_small_n() {
    for n in 3..=5 {
        for k in 1..n {
            let p = circle_from_networks(n, k, CircleMode::Exact).unwrap();
            assert!(p.is_rotation_invariant(), "n={n} k={k}");
            let r = circle_stats(&p).unwrap();
            assert!(check_circle_relations(&r).all_zero(), "n={n} k={k}");
            assert_eq!(r.rho, rho_exact(n, k).unwrap());
        }
    }
}

#[test]
fn circle_laws_are_probability_vectors() {
    let r = circle_stats(&circle_from_networks(4, 2, CircleMode::Exact).unwrap()).unwrap();
    let one = q(1, 1);
    assert_eq!(r.g.iter().cloned().sum::<BigRational>(), one);
    assert_eq!(r.f1.iter().cloned().sum::<BigRational>(), one);
    assert_eq!(r.f2.iter().cloned().sum::<BigRational>(), one);
    assert_eq!(r.g.last().unwrap(), &q(0, 1));
}

#[test]
fn density_of_swaps_for_three_and_four_wires() {
    // Three wires: the two networks 121 and 212 put swap 1 at half the times.
    assert_eq!(rho_exact(3, 1).unwrap(), q(1, 2));
    assert_eq!(rho_by_counts(3, 1).unwrap(), q(1, 2));
    assert_eq!(rho_exact(4, 1).unwrap(), q(5, 16));
    assert_eq!(rho_by_counts(4, 1).unwrap(), q(5, 16));
    let direct = circle_stats(&circle_from_networks(4, 1, CircleMode::Exact).unwrap())
        .unwrap()
        .rho;
    assert_eq!(direct, q(5, 16));
}

#[test]
fn density_counts_swaps_per_network() {
    // Each network on n wires uses swap k a fixed number of times on average:
    // summing rho over k gives one swap per time step.
    for n in 3..=7 {
        let total: BigRational = (1..n).map(|k| rho_exact(n, k).unwrap()).sum();
        assert_eq!(total, q(1, 1), "n = {n}");
    }
}

#[test]
fn hook_ratio_matches_direct_counts() {
    for n in 3..=9 {
        for k in 1..n {
            assert_eq!(rho_exact(n, k).unwrap(), rho_by_counts(n, k).unwrap());
        }
    }
}

#[test]
fn exact_density_approaches_its_asymptotic_form() {
    for k in [1, 2] {
        let ratio = rho_exact(200, k).unwrap().to_f64().unwrap() / rho_asym(200, k).unwrap();
        assert!((0.98..=1.02).contains(&ratio), "k={k} ratio={ratio}");
    }
}

#[test]
fn double_factorial_ratio_values() {
    assert_eq!(double_factorial_ratio(1), 1.0);
    assert_eq!(double_factorial_ratio(2), 1.5);
    assert!((double_factorial_ratio(3) - 15.0 / 8.0).abs() < 1e-15);
}

#[test]
fn first_swap_agrees_between_networks_and_tableaux() {
    for t in enumerate_syt(&make_staircase(5).unwrap()).unwrap() {
        let net = sortedge::sorting_network::edelman_greene(&t).unwrap();
        for k in 1..5 {
            assert_eq!(
                first_swap_time(&net, k).unwrap(),
                first_swap_from_tableau(&t, k).unwrap()
            );
        }
    }
}

#[test]
fn samplers_driven_by_one_seed_coincide() {
    let n = 30;
    for seed in 0..20 {
        for k in [1, 2, 7] {
            let net = sample_network(n, &mut stream_rng(seed, 0)).unwrap();
            let partial = sample_first_swap(n, k, &mut stream_rng(seed, 0)).unwrap();
            assert_eq!(first_swap_time(&net, k).unwrap(), partial);
            let tab = sample_syt(&make_staircase(n).unwrap(), &mut stream_rng(seed, 0));
            assert_eq!(first_swap_from_tableau(&tab, k).unwrap(), partial);
            let anchor = 100;
            let lazy = sample_spacing(n, k, anchor, &mut stream_rng(seed, 0)).unwrap();
            assert_eq!(spacing_sp1(&net, k, anchor as i64).unwrap() as usize, lazy);
        }
    }
}

#[test]
fn conditional_sampler_matches_the_full_tableau() {
    let n = 25;
    for seed in 0..20 {
        for k in [1, 3, 24] {
            let shape = make_staircase_minus(n, k).unwrap();
            let t = sample_syt(&shape, &mut stream_rng(seed, 1));
            let partial = sample_conditional_spacing(n, k, &mut stream_rng(seed, 1)).unwrap();
            assert_eq!(conditional_spacing_from_tableau(&t, n, k).unwrap(), partial);
        }
    }
}

fn law_of(samples: impl Iterator<Item = usize>, len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for s in samples {
        out[s - 1] += 1.0;
    }
    out
}

#[test]
fn sampled_spacings_follow_the_exact_laws_on_four_wires() {
    let n = 4;
    let k_len = 2 * network_length(n);
    let draws = 20_000;
    for k in 1..n {
        let exact = circle_stats(&circle_from_networks(n, k, CircleMode::Exact).unwrap()).unwrap();
        let expect = |v: &[BigRational]| -> Vec<f64> {
            v.iter()
                .map(|x| x.to_f64().unwrap() * draws as f64)
                .collect()
        };

        let mut rng = stream_rng(400 + k as u64, 0);
        let sp = law_of(
            (0..draws).map(|_| sample_spacing(n, k, 3, &mut rng).unwrap()),
            k_len,
        );
        let (_, _, p) = chi_square_test(&sp, &expect(&exact.f1), 5.0);
        assert!(p > 1e-3, "Sp k={k} p={p}");

        let mut rng = stream_rng(500 + k as u64, 0);
        let cond = law_of(
            (0..draws).map(|_| sample_conditional_spacing(n, k, &mut rng).unwrap()),
            k_len,
        );
        let (_, _, p) = chi_square_test(&cond, &expect(&exact.f2), 5.0);
        assert!(p > 1e-3, "conditional k={k} p={p}");
    }
}

#[test]
fn spacing_around_any_anchor_has_one_law() {
    // Rotation invariance on the enumerated networks.
    let nets = enumerate_networks(4).unwrap();
    let law = |a: i64| {
        let mut v = vec![0usize; 13];
        for net in &nets {
            v[spacing_sp1(net, 2, a).unwrap() as usize] += 1;
        }
        v
    };
    let base = law(0);
    for a in 1..12 {
        assert_eq!(law(a), base);
    }
}

#[test]
fn monte_carlo_circle_is_close_to_exact() {
    let exact = circle_stats(&circle_from_networks(4, 1, CircleMode::Exact).unwrap()).unwrap();
    let mc = circle_stats(
        &circle_from_networks(
            4,
            1,
            CircleMode::MonteCarlo {
                samples: 4000,
                seed: 3,
            },
        )
        .unwrap(),
    )
    .unwrap();
    let d = (mc.rho.to_f64().unwrap() - exact.rho.to_f64().unwrap()).abs();
    assert!(d < 0.02, "{d}");
}

#[test]
fn report_serialises_rationals_as_strings() {
    let r = circle_stats(&circle_from_networks(3, 1, CircleMode::Exact).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["rho"], "1/2");
    let csv = r.to_csv();
    assert!(csv.starts_with("ell,g,f1,f2,resid1,resid2\n"));
    assert_eq!(csv.lines().count(), 1 + 6);
}

#[test]
fn bad_arguments_are_domain_errors() {
    assert!(rho_exact(4, 4).is_err());
    assert!(rho_exact(4, 0).is_err());
    let mut rng = stream_rng(0, 0);
    assert!(sample_spacing(5, 1, 0, &mut rng).is_err());
    assert!(sample_spacing(5, 1, 11, &mut rng).is_err());
}
