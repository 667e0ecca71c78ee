//! End-to-end runs of the `roughlift` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roughlift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn generate(dir: &TempDir, name: &str, seed: u64, dim: usize, level: u32) -> PathBuf {
    let path = dir.path().join(name);
    let out = run(&[
        "generate",
        "--seed",
        &seed.to_string(),
        "--dim",
        &dim.to_string(),
        "--grid-level",
        &level.to_string(),
        "--out",
        s(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "a.csv", 7, 2, 11);
    let b = generate(&dir, "b.csv", 7, 2, 11);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().count(), 2050);
    assert_eq!(text.lines().next().unwrap(), "t,x1,x2");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn oversized_grid_is_a_resource_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("big.csv");
    let out = run(&["generate", "--grid-level", "21", "--out", s(&path)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn lift_of_constant_path_is_identity_up_to_rounding() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("const.csv");
    let rows: String = (0..=256)
        .map(|i| format!("{},1.5,-2\n", i as f64 / 256.0))
        .collect();
    fs::write(&input, format!("t,x1,x2\n{rows}")).unwrap();
    let out_csv = dir.path().join("lift.csv");
    let report = dir.path().join("report.json");
    let out = run(&[
        "lift",
        "--levels",
        "5",
        "--in",
        s(&input),
        "--out",
        s(&out_csv),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&out_csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x_1,x_2,xx_11,xx_12,xx_21,xx_22");
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(&cols[1..3], &[0.0, 0.0], "{line}");
        assert!(cols[3..].iter().all(|v| v.abs() < 1e-14), "{line}");
    }
    let r = read_json(&report);
    assert_eq!(r["pass"], true);
    // The square root in the homogeneous norm lifts rounding-level second
    // levels to about 1e-8.
    assert!(r["metrics"]["norms"]["rough_norm"].as_f64().unwrap() < 1e-6);
}

#[test]
fn lift_then_check_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "x.csv", 3, 2, 10);
    let lift_csv = dir.path().join("lift.csv");
    let report = dir.path().join("report.json");
    let out = run(&[
        "lift",
        "--alpha",
        "0.4",
        "--p",
        "4",
        "--levels",
        "7",
        "--in",
        s(&input),
        "--out",
        s(&lift_csv),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = read_json(&report);
    assert_eq!(r["pass"], true);
    for key in [
        "pi_norm_1",
        "pi_norm_2",
        "md_norm_1",
        "md_norm_2",
        "rough_norm",
    ] {
        assert!(r["metrics"]["norms"][key].as_f64().unwrap() > 0.0, "{key}");
    }
    assert_eq!(r["versions"]["wavelet"], "db8");
    assert_eq!(r["config"]["N"], 7);

    let check_out = dir.path().join("check.json");
    let out = run(&[
        "check",
        "--alpha",
        "0.4",
        "--in",
        s(&lift_csv),
        "--report",
        s(&report),
        "--out",
        s(&check_out),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_json(&check_out)["pass"], true);

    let out = run(&[
        "check",
        "--alpha",
        "0.35",
        "--in",
        s(&lift_csv),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("mismatch"), "{}", stderr(&out));
}

#[test]
fn three_dimensional_lift() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "x.csv", 4, 3, 9);
    let lift_csv = dir.path().join("lift.csv");
    let out = run(&[
        "lift",
        "--levels",
        "6",
        "--in",
        s(&input),
        "--out",
        s(&lift_csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let text = fs::read_to_string(&lift_csv).unwrap();
    assert_eq!(text.lines().next().unwrap().split(',').count(), 1 + 3 + 9);
}

#[test]
fn corrupted_group_path_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "x.csv", 5, 2, 8);
    let lift_csv = dir.path().join("lift.csv");
    let out = run(&[
        "lift",
        "--levels",
        "5",
        "--in",
        s(&input),
        "--out",
        s(&lift_csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&lift_csv).unwrap();
    let corrupted: Vec<String> = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            if i != 100 {
                return line.to_string();
            }
            let mut cols: Vec<String> = line.split(',').map(str::to_string).collect();
            let v: f64 = cols[3].parse().unwrap();
            cols[3] = (v + 1.0).to_string();
            cols.join(",")
        })
        .collect();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, corrupted.join("\n") + "\n").unwrap();
    let report = dir.path().join("check.json");
    let out = run(&["check", "--in", s(&bad), "--out", s(&report)]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("GroupMembershipViolated"),
        "{}",
        stderr(&out)
    );
    let r = read_json(&report);
    assert_eq!(r["pass"], false);
    assert!(r["errors"][0]
        .as_str()
        .unwrap()
        .contains("GroupMembershipViolated"));
}

#[test]
fn malformed_csv_names_the_row() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "t,x1\n0,0\n0.25,1\n0.5,oops\n0.75,2\n1,3\n").unwrap();
    let out = run(&["norms", "--in", s(&input)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains('4'), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let out = run(&["norms", "--in", s(&dir.path().join("absent.csv"))]);
    assert_eq!(code(&out), 3);
}

#[test]
fn truncation_experiment_reports_json() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("trunc.json");
    let out = run(&[
        "experiment",
        "--grid-level",
        "9",
        "--seed",
        "2",
        "--report",
        s(&report),
        "truncation",
        "--n-list",
        "5,6,7",
    ]);
    assert!(code(&out) <= 1, "{}", stderr(&out));
    let r = read_json(&report);
    assert_eq!(r["experiment"], "truncation");
    assert!(r["metrics"]["norms"]["rough_norm/N=7"].as_f64().is_some());
}
