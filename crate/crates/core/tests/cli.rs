use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tripartite::io::{ensemble_profiles, read_numeric_csv, state_to_json, state_to_text};
use tripartite::{psi_m, SamplerConfig};

fn tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(args)
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn measure_reads_json_and_text_files() {
    let dir = tempfile::tempdir().unwrap();
    let state = psi_m(1.0).unwrap();
    let json = dir.path().join("w.json");
    let text = dir.path().join("w.txt");
    std::fs::write(&json, state_to_json(&state)).unwrap();
    std::fs::write(&text, state_to_text(&state)).unwrap();
    let a = tool(&["measure", path(&json)]);
    let b = tool(&["measure", path(&text)]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!((v["steering_max"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!((v["coherence"].as_f64().unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn measure_failures_print_nothing_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n0 0\n").unwrap();
    let out = tool(&["measure", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let missing = tool(&["measure", path(&dir.path().join("none.json"))]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(missing.stdout.is_empty());
}

#[test]
fn sample_csv_matches_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = tool(&["sample", "--n", "200", "--seed", "9", "--out", path(&csv)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# seed: 9"));
    let (_, rows) = read_numeric_csv(&text).unwrap();
    let profiles = ensemble_profiles(SamplerConfig::new(9, 200).unwrap()).unwrap();
    assert_eq!(rows.len(), 200);
    for (i, (row, p)) in rows.iter().zip(&profiles).enumerate() {
        assert_eq!(row[0], i as f64);
        let expected = [p.ggm, p.gmc, p.fill, p.coherence, p.steering_pairs.ab];
        for (got, want) in row[1..6].iter().zip(expected) {
            assert_eq!(got.to_bits(), want.to_bits());
        }
    }
}

#[test]
fn sample_to_stdout_equals_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    tool(&["sample", "--n", "3", "--seed", "7", "--out", path(&csv)]);
    let out = tool(&["sample", "--n", "3", "--seed", "7"]);
    assert_eq!(out.stdout, std::fs::read(&csv).unwrap());
}

#[test]
fn verify_writes_report_and_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = tool(&[
        "verify",
        "--n",
        "2000",
        "--seed",
        "5",
        "--out",
        path(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    for r in v["relations"].as_array().unwrap() {
        assert_eq!(r["pass"], true, "{r}");
    }
    assert_eq!(
        tool(&["verify", "--n", "10", "--tol", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(tool(&["verify", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn figure_without_samples_draws_only_curves() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f4.csv");
    let svg = dir.path().join("f4.svg");
    let out = tool(&[
        "figure",
        "--which",
        "F4",
        "--n",
        "0",
        "--csv",
        path(&csv),
        "--out",
        path(&svg),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(
        doc.descendants()
            .filter(|n| n.has_tag_name("circle"))
            .count(),
        0
    );
    let boundaries = doc
        .descendants()
        .filter(|n| {
            n.attribute("class")
                .is_some_and(|c| c.starts_with("boundary"))
        })
        .count();
    assert!(boundaries >= 1);
    let (_, rows) = read_numeric_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert!(rows.is_empty());
}

#[test]
fn figure_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let svg = dir.path().join(format!("{tag}.svg"));
        let out = tool(&[
            "figure",
            "--which",
            "F5",
            "--n",
            "500",
            "--seed",
            "4",
            "--csv",
            path(&csv),
            "--out",
            path(&svg),
        ]);
        assert!(out.status.success());
        (std::fs::read(csv).unwrap(), std::fs::read(svg).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn unknown_figure_is_a_usage_error() {
    assert_eq!(
        tool(&["figure", "--which", "F6", "--n", "0"]).status.code(),
        Some(2)
    );
}
