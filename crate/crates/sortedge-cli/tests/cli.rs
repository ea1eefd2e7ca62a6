use serde_json::Value;
use sortedge::sorting_network::{is_sorting_network, SortingNetwork};
use sortedge::stats::erf;
use sortedge::tableaux::{make_staircase, StandardTableau};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sortedge(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sortedge"))
        .arg("--out-dir")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

/// Rows of a CSV file with a header, parsed as numbers.
fn csv_rows(p: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(p).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sample_networks_writes_valid_networks_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "sample", "network", "--n", "5", "--count", "3", "--seed", "7",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let nets: Vec<SortingNetwork> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("networks.json")).unwrap())
            .unwrap();
    assert_eq!(nets.len(), 3);
    assert!(nets
        .iter()
        .all(|s| is_sorting_network(5, s.swaps()).unwrap()));
    let m = read_json(&dir.path().join("manifest.json"));
    assert_eq!(m["experiment"], "sample-network");
    assert_eq!(m["params"]["sample"]["network"]["seed"], 7);
    assert_eq!(m["params_hash"].as_str().unwrap().len(), 64);
    assert!(m["finished_unix"].as_u64().unwrap() >= m["started_unix"].as_u64().unwrap());
    assert!(dir.path().join("repro.sh").exists());
}

#[test]
fn seed_determines_output_whatever_the_job_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "sample", "network", "--n", "12", "--count", "600", "--seed", "5",
    ];
    assert_eq!(
        code(&sortedge(a.path(), &[&["--jobs", "1"], &args[..]].concat())),
        0
    );
    assert_eq!(
        code(&sortedge(b.path(), &[&["--jobs", "3"], &args[..]].concat())),
        0
    );
    let read = |d: &Path| fs::read_to_string(d.join("networks.json")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn sample_tableaux_of_a_staircase() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "sample",
            "syt",
            "--shape",
            "staircase:6",
            "--count",
            "1",
            "--seed",
            "1",
        ],
    );
    assert_eq!(code(&o), 0);
    let tabs: Vec<StandardTableau> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("tableaux.json")).unwrap())
            .unwrap();
    assert_eq!(tabs.len(), 1);
    assert_eq!(tabs[0].shape().rows(), make_staircase(6).unwrap().rows());

    let o = sortedge(
        dir.path(),
        &["sample", "syt", "--shape", "rows:2,2", "--format", "csv"],
    );
    assert_eq!(code(&o), 0);
    let (header, rows) = csv_rows(&dir.path().join("tableaux.csv"));
    assert_eq!(header, ["sample_id", "i", "j", "value"]);
    assert_eq!(rows.len(), 4);
}

#[test]
fn sample_spectra_have_two_values_at_level_four() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "sample", "ague", "--dim", "4", "--count", "10", "--seed", "1",
        ],
    );
    assert_eq!(code(&o), 0);
    let (header, rows) = csv_rows(&dir.path().join("spectra.csv"));
    assert_eq!(header, ["sample_id", "level", "rank", "value"]);
    for s in 0..10 {
        let top: Vec<&Vec<f64>> = rows
            .iter()
            .filter(|r| r[0] == s as f64 && r[1] == 4.0)
            .collect();
        assert_eq!(top.len(), 2);
        assert!(top.iter().all(|r| r[3] > 0.0));
        // Rank 1 is the smaller value.
        assert!(top[0][3] <= top[1][3]);
    }
}

#[test]
fn fredholm_table_matches_the_error_function() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "analyze", "fredholm", "--k", "1", "--tmax", "3", "--step", "0.05",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&dir.path().join("fredholm.csv"));
    assert_eq!(header, ["t", "F", "g", "ghat"]);
    assert_eq!(rows.len(), 61);
    for r in &rows {
        assert!((r[1] - (1.0 - erf(r[0]))).abs() < 1e-8);
    }
}

#[test]
fn limiting_kernel_series_and_hermite_columns_agree() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "analyze", "kernel", "--family", "limiting", "--k", "2", "--grid", "10",
        ],
    );
    assert_eq!(code(&o), 0);
    let (header, rows) = csv_rows(&dir.path().join("kernel.csv"));
    assert_eq!(header, ["u1", "u2", "value", "series", "hermite"]);
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| (r[3] - r[4]).abs() < 1e-8));
    let meta = read_json(&dir.path().join("kernel.json"));
    assert_eq!(meta["family"]["family"], "limiting_hermite");
    assert_eq!(meta["levels"], serde_json::json!([4, 4]));
}

#[test]
fn other_kernel_families_tabulate() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--family", "kernel-k", "--k", "3"][..],
        &[
            "--family", "residue", "--x1", "3", "--x2", "5", "--umax", "2",
        ],
        &["--family", "conditioned", "--k", "1", "--x1", "3"],
        &["--family", "corners", "--x1", "4", "--x2", "2"],
        &[
            "--family",
            "finite",
            "--n",
            "6",
            "--x1",
            "4",
            "--minus-k",
            "2",
        ],
    ] {
        let o = sortedge(
            dir.path(),
            &[&["analyze", "kernel", "--grid", "4"], args].concat(),
        );
        assert_eq!(
            code(&o),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let (header, rows) = csv_rows(&dir.path().join("kernel.csv"));
        assert_eq!(header, ["u1", "u2", "value"]);
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r[2].is_finite()));
    }
}

#[test]
fn conditional_density_matches_its_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &["analyze", "density", "--k", "1", "--which", "ghat"],
    );
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&dir.path().join("density.csv"));
    for r in &rows {
        assert!(
            (r[1] - 2.0 * r[0] * (-r[0] * r[0]).exp()).abs() < 1e-6,
            "x = {}",
            r[0]
        );
    }
    assert_eq!(read_json(&dir.path().join("summary.json"))["passed"], true);
}

#[test]
fn exact_suite_passes_on_four_wires() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(dir.path(), &["experiment", "exact", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read_json(&dir.path().join("summary.json"))["passed"], true);
    for k in 1..4 {
        assert!(dir.path().join(format!("circle_k{k}.csv")).exists());
    }
}

#[test]
fn monte_carlo_campaigns_write_their_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &[
            "experiment",
            "first-swap",
            "--n",
            "40",
            "--samples",
            "2000",
            "--seed",
            "42",
            "--samples-csv",
        ],
    );
    assert!(code(&o) <= 1);
    let s = read_json(&dir.path().join("summary.json"));
    assert!(s["ks"]["value"].as_f64().unwrap() < 0.1);
    assert_eq!(
        read_json(&dir.path().join("manifest.json"))["tolerances"]["ks"],
        0.03
    );
    assert_eq!(csv_rows(&dir.path().join("samples.csv")).1.len(), 2000);

    let o = sortedge(
        dir.path(),
        &[
            "experiment",
            "conditional-spacing",
            "--n",
            "30",
            "--samples",
            "1000",
        ],
    );
    assert!(code(&o) <= 1);
    assert!(dir.path().join("histogram.csv").exists());

    let o = sortedge(
        dir.path(),
        &[
            "experiment",
            "corners",
            "--n",
            "20",
            "--levels",
            "4",
            "--samples",
            "500",
        ],
    );
    assert!(code(&o) <= 1);
    let (header, rows) = csv_rows(&dir.path().join("corners.csv"));
    assert_eq!(header[0], "l");
    assert_eq!(rows.len(), 4);
}

#[test]
fn failed_checks_exit_with_one() {
    // Three wires are far from the limit.
    let dir = tempfile::tempdir().unwrap();
    let o = sortedge(
        dir.path(),
        &["experiment", "first-swap", "--n", "3", "--samples", "500"],
    );
    assert_eq!(code(&o), 1);
    assert_eq!(read_json(&dir.path().join("summary.json"))["passed"], false);
}

#[test]
fn wiring_diagram_of_the_reference_network() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("w.svg");
    let o = sortedge(
        dir.path(),
        &[
            "wiring",
            "--network",
            "2,1,3,2,4,3,4,1,2,1",
            "--n",
            "5",
            "--out",
            svg.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("<polyline").count(), 5);
    let o = sortedge(
        dir.path(),
        &["wiring", "--network", "1,1", "--n", "3", "--out", "x.svg"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&sortedge(
            dir.path(),
            &["sample", "network", "--n", "5", "--bogus", "1"]
        )),
        2
    );
    assert_eq!(code(&sortedge(dir.path(), &["sample", "network"])), 2);
    assert_eq!(
        code(&sortedge(dir.path(), &["experiment", "exact", "--n", "7"])),
        2
    );
    assert_eq!(
        code(&sortedge(
            dir.path(),
            &["sample", "syt", "--shape", "blob:3"]
        )),
        2
    );
    // The manifest is on disk before the command fails.
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn io_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "").unwrap();
    let o = sortedge(&file, &["sample", "network", "--n", "4"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"n": 5, "count": 2, "seed": 3, "format": "csv"}"#).unwrap();
    let out = dir.path().join("out");
    let o = sortedge(
        &out,
        &[
            "sample",
            "network",
            "--config",
            cfg.to_str().unwrap(),
            "--count",
            "4",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let params = &read_json(&out.join("manifest.json"))["params"]["sample"]["network"];
    assert_eq!(params["count"], 4);
    assert_eq!(params["seed"], 3);
    assert_eq!(params["n"], 5);
    assert_eq!(
        fs::read_to_string(out.join("networks.csv"))
            .unwrap()
            .lines()
            .count(),
        5
    );

    fs::write(&cfg, r#"{"n": 5, "colour": "red"}"#).unwrap();
    let o = sortedge(
        &out,
        &["sample", "network", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(code(&o), 2);
    fs::write(&cfg, "[1, 2]").unwrap();
    let o = sortedge(
        &out,
        &["sample", "network", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn replay_reproduces_a_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let o = sortedge(
        &first,
        &[
            "sample", "ague", "--dim", "5", "--count", "20", "--seed", "9",
        ],
    );
    assert_eq!(code(&o), 0);
    let second = dir.path().join("second");
    let manifest = first.join("manifest.json");
    let o = sortedge(&second, &["replay", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let read = |d: &Path| fs::read_to_string(d.join("spectra.csv")).unwrap();
    assert_eq!(read(&first), read(&second));

    let third = dir.path().join("third");
    let o = Command::new("sh")
        .arg(first.join("repro.sh"))
        .arg(&third)
        .env("SORTEDGE", env!("CARGO_BIN_EXE_sortedge"))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&first), read(&third));

    // A tampered manifest is refused.
    let mut m = read_json(&manifest);
    m["params"]["sample"]["ague"]["seed"] = 10.into();
    fs::write(&manifest, m.to_string()).unwrap();
    let o = sortedge(&second, &["replay", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}
