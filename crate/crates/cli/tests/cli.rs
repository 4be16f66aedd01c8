use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rivalloc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rivalloc"))
        .args(args)
        .current_dir(dir)
        .env_remove("RIVALLOC_EPS")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const DEMO: &str = r#"{"r": 2, "customers": [{"x": 0, "y": 0, "w": 1}, {"x": 10, "y": 0.5, "w": 1}]}"#;

#[test]
fn solve_demo_in_every_mode() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "demo.json", DEMO);
    for mode in ["parametric", "intermediate", "brute"] {
        let out = dir.path().join(format!("{mode}.json"));
        let o = rivalloc(
            &["solve", "--input", &input, "--mode", mode, "--out", out.to_str().unwrap()],
            dir.path(),
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&out).unwrap();
        assert!(text.ends_with('\n'));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["weight_loss"], 1.0);
        assert_eq!(v["solver"], mode);
        assert_eq!(v["centroid"].as_array().unwrap().len(), 2);
        assert!(v["telemetry"]["oracle_calls"].is_u64());
    }
}

#[test]
fn result_record_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "demo.json", DEMO);
    let o = rivalloc(&["solve", "--input", &input], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    // every number is printed with enough digits to come back unchanged
    for c in v["centroid"].as_array().unwrap() {
        assert!(text.contains(&serde_json::to_string(c).unwrap()));
    }
}

#[test]
fn plot_is_written() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "demo.json", DEMO);
    let svg = dir.path().join("demo.svg");
    let o = rivalloc(&["solve", "--input", &input, "--plot", svg.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    let s = fs::read_to_string(svg).unwrap();
    assert!(s.starts_with("<svg"));
    // two sites, two R/2 circles, centroid and follower
    assert_eq!(s.matches("<circle").count(), 6);
}

#[test]
fn malformed_json_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "bad.json", "{\"r\": 2, \"customers\": [");
    let o = rivalloc(&["solve", "--input", &input], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let input = write(dir.path(), "neg.json", r#"{"r": -1, "customers": [{"x": 0, "y": 0, "w": 1}]}"#);
    assert_eq!(rivalloc(&["solve", "--input", &input], dir.path()).status.code(), Some(2));
    let input = write(dir.path(), "w.json", r#"{"r": 1, "customers": [{"x": 0, "y": 0, "w": 0}]}"#);
    assert_eq!(rivalloc(&["solve", "--input", &input], dir.path()).status.code(), Some(2));
}

#[test]
fn general_position_violations_exit_3() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "col.json",
        r#"{"r": 2, "customers": [{"x": 0, "y": 0, "w": 1}, {"x": 1, "y": 2, "w": 1}, {"x": 2, "y": 4, "w": 1}]}"#,
    );
    let o = rivalloc(&["solve", "--input", &input], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("0, 1 and 2"));
    let input = write(
        dir.path(),
        "shared.json",
        r#"{"r": 2, "customers": [{"x": 0, "y": 0, "w": 1}, {"x": 0, "y": 3, "w": 1}]}"#,
    );
    let o = rivalloc(&["solve", "--input", &input], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("customers 0 and 1"));
}

#[test]
fn eps_override_from_environment() {
    let dir = TempDir::new().unwrap();
    // x coordinates 0.001 apart are distinct by default
    let input = write(
        dir.path(),
        "near.json",
        r#"{"r": 2, "customers": [{"x": 0, "y": 0, "w": 1}, {"x": 0.001, "y": 3, "w": 1}]}"#,
    );
    assert!(rivalloc(&["solve", "--input", &input], dir.path()).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_rivalloc"))
        .args(["solve", "--input", &input])
        .env("RIVALLOC_EPS", "0.01")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_is_deterministic_and_in_general_position() {
    let dir = TempDir::new().unwrap();
    let a = rivalloc(&["gen", "--n", "8", "--seed", "7", "--coord-range", "50"], dir.path());
    let b = rivalloc(&["gen", "--n", "8", "--seed", "7", "--coord-range", "50"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let pts: Vec<(i64, i64)> = v["customers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["x"].as_f64().unwrap() as i64, c["y"].as_f64().unwrap() as i64))
        .collect();
    assert_eq!(pts.len(), 8);
    for (i, p) in pts.iter().enumerate() {
        assert!(p.0.abs() <= 50 && p.1.abs() <= 50);
        for q in &pts[i + 1..] {
            assert!(p.0 != q.0 && p.1 != q.1);
        }
    }
    for seed in 0..20 {
        let o = rivalloc(&["gen", "--n", "3", "--seed", &seed.to_string()], dir.path());
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let c = v["customers"].as_array().unwrap();
        let p = |i: usize| (c[i]["x"].as_f64().unwrap(), c[i]["y"].as_f64().unwrap());
        let (a, b, d) = (p(0), p(1), p(2));
        assert_ne!((b.0 - a.0) * (d.1 - a.1), (b.1 - a.1) * (d.0 - a.0));
    }
}

#[test]
fn gen_gives_up_with_exit_4() {
    let dir = TempDir::new().unwrap();
    let o = rivalloc(&["gen", "--n", "30", "--coord-range", "5"], dir.path());
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn compare_seed_range_agrees() {
    let dir = TempDir::new().unwrap();
    let o = rivalloc(&["compare", "--gen-n", "8", "--seeds", "1..50"], dir.path());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("all 50 instance(s) agree"));
    assert!(!dir.path().join("rivalloc-repro.json").exists());
}

#[test]
fn compare_single_customer() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "one.json", r#"{"r": 3, "customers": [{"x": 1, "y": 1, "w": 5}]}"#);
    let o = rivalloc(&["compare", "--input", &input], dir.path());
    assert!(o.status.success());
    let row = String::from_utf8_lossy(&o.stdout).lines().nth(1).unwrap().to_string();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cols[2..5], &["0", "0", "0"]);
}

#[test]
fn injected_fault_exits_1_with_replayable_reproducer() {
    let dir = TempDir::new().unwrap();
    let o = rivalloc(&["compare", "--gen-n", "5", "--seeds", "3..4", "--inject-fault"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let repro = dir.path().join("rivalloc-repro.json");
    let text = fs::read_to_string(&repro).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["customers"].as_array().unwrap().len(), 5);
    let replay = rivalloc(
        &["compare", "--input", repro.to_str().unwrap(), "--inject-fault", "--reproducer", "again.json"],
        dir.path(),
    );
    assert_eq!(replay.status.code(), Some(1));
    assert_eq!(fs::read_to_string(dir.path().join("again.json")).unwrap(), text);
    // without the fault the same instance is fine
    let clean = rivalloc(&["compare", "--input", repro.to_str().unwrap()], dir.path());
    assert!(clean.status.success());
}
