use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn equicut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicut"))
        .args(args)
        .env_remove("EQUICUT_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_equilateral() {
    let o = equicut(&["analyze", "--region", "1,1", "--height", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Σ1 angles (H = 1): FoundCandidate"), "{s}");
    assert!(s.contains("witness (1, -1, 0) [interval-only]"), "{s}");
}

#[test]
fn analyze_rational_sides() {
    let o = equicut(&["analyze", "--region", "7/8,3/4", "--height", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Σ2 sides (H = 12): FoundCertified"), "{s}");
    assert!(s.contains("witness (1, 0, -7/8) [exact]"), "{s}");
    // 3γ = π + β for this triangle
    assert!(s.contains("Σ1 angles (H = 12): FoundCandidate"), "{s}");
    assert!(s.contains("witness (1, 2, -2)"), "{s}");
}

#[test]
fn analyze_json() {
    let o = equicut(&["analyze", "--region", "1/2,1/2*sqrt(3)", "--height", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["angles"]["status"], "FoundCandidate");
    let ws = v["angles"]["witnesses"].as_array().unwrap();
    assert!(ws
        .iter()
        .any(|w| w["coefficients"] == serde_json::json!(["2", "-1", "0"])));
}

#[test]
fn standard_writes_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for (n, pieces) in [(1, 1), (3, 9), (10, 100)] {
        let o = equicut(&[
            "standard",
            "--region",
            "7/8,3/4",
            "--n",
            &n.to_string(),
            "--out",
            path(dir.path()),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let text = fs::read_to_string(dir.path().join(format!("standard-{n}.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["pieces"].as_array().unwrap().len(), pieces);
        let svg = fs::read_to_string(dir.path().join(format!("standard-{n}.svg"))).unwrap();
        assert_eq!(svg.matches("<polygon").count(), pieces + 1);
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    equicut(&["standard", "--region", "7/8,3/4", "--n", "3", "--out", path(dir.path())]);
    let file = dir.path().join("standard-3.json");
    let o = equicut(&["verify", path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    v["pieces"][0]["vertices"][0][0] = "-1/1000".into();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, v.to_string()).unwrap();
    let o = equicut(&["verify", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid"));

    let o = equicut(&["verify", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_right_isoceles() {
    let dir = tempfile::tempdir().unwrap();
    let o = equicut(&[
        "search",
        "--region",
        "1/2*sqrt(2),1/2*sqrt(2)",
        "--pieces",
        "2",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 found"), "{}", stdout(&o));
    let written = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(written, 2);
    let o = equicut(&["verify", path(&dir.path().join("search-m2-t0-0.json"))]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn search_reports_area_mismatch_tile() {
    let o = equicut(&["search", "--region", "1,1", "--pieces", "3", "--tile", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped"), "{}", stdout(&o));
}

#[test]
fn boundary_full_staircase() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.txt");
    fs::write(&file, "n 3\n0 0 up\n1 0 up\n1 0 down\n1 1 up\n").unwrap();
    let svg = dir.path().join("r.svg");
    let o = equicut(&["boundary", path(&file), "--svg", path(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("turning 6"), "{s}");
    assert!(s.contains("pattern: "), "{s}");
    assert!(svg.exists());
}

#[test]
fn sample_hit_rate() {
    let o = equicut(&["sample", "--count", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = s.lines().find(|l| l.starts_with("hit rate: ")).unwrap();
    let hits: u32 = line["hit rate: ".len()..].split('/').next().unwrap().parse().unwrap();
    assert!(hits <= 1, "{s}");
}

#[test]
fn usage_errors() {
    assert_eq!(equicut(&["analyze", "--region", "1"]).status.code(), Some(2));
    assert_eq!(equicut(&["analyze", "--region", "1,x"]).status.code(), Some(2));
    assert_eq!(
        equicut(&["standard", "--region", "1,1", "--n", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(equicut(&["bogus"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_equicut"))
        .args(["analyze", "--region", "1,1"])
        .env("EQUICUT_PRECISION_BITS", "32")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
