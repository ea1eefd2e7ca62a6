use num_bigint::BigUint;
use sortedge::exec::stream_rng;
use sortedge::stats::chi_square_test;
use sortedge::tableaux::*;
use sortedge::Error;
use std::collections::HashMap;

fn shape(rows: &[usize]) -> Shape {
    Shape::new(rows.to_vec()).unwrap()
}

#[test]
fn hook_formula_agrees_with_enumeration_on_small_shapes() {
    for rows in [
        vec![1],
        vec![2, 1],
        vec![3, 2, 1],
        vec![4, 3, 2, 1],
        vec![3, 3],
        vec![4, 2, 1],
        vec![2, 2, 2],
        vec![5, 3, 1],
        vec![4, 3, 2, 1, 1],
    ] {
        let s = shape(&rows);
        let listed = enumerate_syt(&s).unwrap();
        assert_eq!(count_syt(&s), BigUint::from(listed.len()), "{rows:?}");
    }
}

#[test]
fn staircase_counts() {
    // Frozen from the brute-force enumerator.
    let expect = [(3, 2u64), (4, 16), (5, 768)];
    for (n, c) in expect {
        let s = make_staircase(n).unwrap();
        assert_eq!(count_syt(&s), BigUint::from(c));
        assert_eq!(enumerate_syt(&s).unwrap().len() as u64, c);
    }
}

#[test]
fn hook_lengths_of_the_staircase_corner_and_origin() {
    let s = make_staircase(5).unwrap();
    assert_eq!(hook_length(&s, (1, 1)).unwrap(), 7);
    assert_eq!(hook_length(&s, (4, 1)).unwrap(), 1);
    assert!(matches!(hook_length(&s, (4, 2)), Err(Error::Domain(_))));
}

#[test]
fn minus_shape_drops_exactly_the_corner() {
    let s = make_staircase_minus(6, 2).unwrap();
    assert_eq!(s.rows(), &[5, 4, 3, 1, 1]);
    assert_eq!(
        staircase_family(&s),
        Some(StaircaseFamily::MinusCorner { n: 6, k: 2 })
    );
    assert_eq!(
        staircase_family(&make_staircase(6).unwrap()),
        Some(StaircaseFamily::Full { n: 6 })
    );
    assert_eq!(staircase_family(&shape(&[3, 3])), None);
    assert!(make_staircase_minus(6, 6).is_err());
}

#[test]
fn enumerated_tableaux_are_valid_and_distinct() {
    let s = shape(&[3, 2, 1]);
    let all = enumerate_syt(&s).unwrap();
    let mut seen = std::collections::HashSet::new();
    for t in &all {
        StandardTableau::new(s.clone(), t.rows().to_vec()).unwrap();
        assert!(seen.insert(t.rows().to_vec()));
    }
}

#[test]
fn enumeration_refuses_large_shapes() {
    let s = make_staircase(6).unwrap();
    assert!(matches!(enumerate_syt(&s), Err(Error::Resource(_))));
    assert_eq!(enumerate_syt_capped(&s, 15).unwrap().len(), 292_864);
}

#[test]
fn invalid_fillings_are_rejected() {
    let s = shape(&[2, 1]);
    assert!(StandardTableau::new(s.clone(), vec![vec![2, 1], vec![3]]).is_err());
    assert!(StandardTableau::new(s.clone(), vec![vec![1, 3], vec![1]]).is_err());
    assert!(StandardTableau::new(s.clone(), vec![vec![1, 2]]).is_err());
    assert!(Shape::new(vec![1, 2]).is_err());
}

#[test]
fn rotation_is_a_bijection_onto_levels() {
    for n in 2..=9 {
        let mut per_level: HashMap<usize, usize> = HashMap::new();
        for (i, j) in make_staircase(n).unwrap().cells() {
            let rc = rotate_coord(n, i, j).unwrap();
            assert_eq!(unrotate_coord(n, rc.l, rc.m).unwrap(), (i, j));
            *per_level.entry(rc.l).or_default() += 1;
        }
        for l in 2..=2 * n - 2 {
            assert_eq!(
                per_level.get(&l).copied().unwrap_or(0),
                level_size(n, l),
                "n={n} l={l}"
            );
        }
    }
}

#[test]
fn corner_cells_sit_at_rank_one() {
    let n = 7;
    for k in 1..n {
        let rc = rotate_coord(n, n - k, k).unwrap();
        assert_eq!(rc.l, 2 * k);
        assert_eq!(rc.m, 1);
    }
}

#[test]
fn hook_walk_is_uniform_on_the_four_staircase() {
    let s = make_staircase(4).unwrap();
    let all = enumerate_syt(&s).unwrap();
    let index: HashMap<Vec<Vec<u32>>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, t)| (t.rows().to_vec(), i))
        .collect();
    let draws = 32_000;
    let mut counts = vec![0.0; all.len()];
    let mut rng = stream_rng(2024, 0);
    for _ in 0..draws {
        counts[index[sample_syt(&s, &mut rng).rows()]] += 1.0;
    }
    let expected = vec![draws as f64 / all.len() as f64; all.len()];
    let (_, _, p) = chi_square_test(&counts, &expected, 5.0);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn hook_walk_labels_only_corners() {
    let s = make_staircase(12).unwrap();
    let mut rng = stream_rng(8, 3);
    let mut walk = HookWalk::new(&s);
    while walk.remaining() > 0 {
        let before: Vec<usize> = (1..=12).map(|i| walk.row_len(i)).collect();
        let (i, j, label) = walk.step(&mut rng);
        assert_eq!(label as usize, walk.remaining() + 1);
        assert_eq!(j, before[i - 1]);
        assert!(
            before.get(i).copied().unwrap_or(0) < j,
            "({i},{j}) was not a corner"
        );
        assert!(walk.is_labelled(i, j));
    }
}

#[test]
fn max_cell_is_a_corner() {
    let mut rng = stream_rng(1, 0);
    let s = make_staircase(9).unwrap();
    for _ in 0..20 {
        let (i, j) = sample_syt(&s, &mut rng).max_cell();
        assert_eq!(i + j, 9);
    }
}

#[test]
fn poissonized_round_trip() {
    let s = make_staircase(10).unwrap();
    let mut rng = stream_rng(77, 0);
    for _ in 0..20 {
        let t = sample_syt(&s, &mut rng);
        let p = syt_to_pyt(&t, &mut rng);
        PoissonizedTableau::new(s.clone(), p.rows().to_vec()).unwrap();
        assert_eq!(pyt_to_syt(&p), t);
    }
}

#[test]
fn projection_interlaces_and_fills_levels() {
    let n = 9;
    let s = make_staircase(n).unwrap();
    let mut rng = stream_rng(5, 0);
    for _ in 0..50 {
        let p = syt_to_pyt(&sample_syt(&s, &mut rng), &mut rng);
        let pc = project_points(&p, n).unwrap();
        assert!(pc.is_interlacing());
        for l in 2..=2 * n - 2 {
            assert_eq!(pc.count(l), level_size(n, l));
        }
        let scale = (n as f64).sqrt();
        assert!(pc.levels.values().flatten().all(|&u| u > 0.0 && u < scale));
    }
}

#[test]
fn projection_rejects_other_shapes() {
    let s = shape(&[3, 3]);
    let mut rng = stream_rng(0, 0);
    let p = syt_to_pyt(&sample_syt(&s, &mut rng), &mut rng);
    assert!(project_points(&p, 4).is_err());
}

#[test]
fn weaving_examples() {
    assert!(weaves(&[1.0, 3.0], &[2.0]));
    assert!(weaves(&[2.0], &[1.0, 3.0]));
    assert!(!weaves(&[1.0, 2.0], &[3.0]));
    assert!(weaves(&[1.0], &[2.0]));
    assert!(!weaves(&[1.0, 2.0, 3.0], &[1.5]));
}

#[test]
fn tableau_json_round_trip() {
    let mut rng = stream_rng(3, 0);
    let t = sample_syt(&make_staircase(6).unwrap(), &mut rng);
    let text = serde_json::to_string(&t).unwrap();
    let back: StandardTableau = serde_json::from_str(&text).unwrap();
    assert_eq!(back.rows(), t.rows());
    let bad = r#"{"shape":[2,1],"entries":[[1,1,2],[1,2,1],[2,1,3]]}"#;
    assert!(serde_json::from_str::<StandardTableau>(bad).is_err());
    let outside = r#"{"shape":[1],"entries":[[1,2,1]]}"#;
    assert!(serde_json::from_str::<StandardTableau>(outside).is_err());
}
