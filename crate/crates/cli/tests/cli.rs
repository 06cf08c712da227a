use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn regstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regstab"))
        .args(args)
        .env_remove("REGSTAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_two_squares() {
    let out = regstab(&["analyze", &path("ci22.ideal"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = &v["stabilization"];
    assert_eq!(
        (s["d"].as_u64(), s["t0"].as_u64(), s["b"].as_i64()),
        (Some(2), Some(1), Some(1))
    );
    assert_eq!((s["c"].as_i64(), s["stab"].as_u64()), (Some(1), Some(1)));
    let regs: Vec<i64> = s["table"].as_array().unwrap()[..3]
        .iter()
        .map(|r| r["reg"].as_i64().unwrap())
        .collect();
    assert_eq!(regs, [3, 5, 7]);
    assert_eq!(v["verdict"], "pass");
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "anchor", "lhs", "rhs", "relation", "pass", "certified"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
}

#[test]
fn analyze_maximal_ideal() {
    let v = json(&regstab(&["analyze", &path("m2.ideal"), "--json"]));
    let s = &v["stabilization"];
    assert_eq!(
        (s["d"].as_u64(), s["b"].as_i64(), s["stab"].as_u64()),
        (Some(1), Some(0), Some(1))
    );
}

#[test]
fn analyze_rejects_non_primary_input() {
    let out = regstab(&["analyze", &path("nonprimary.ideal")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`y`"));
}

#[test]
fn analyze_reports_syntax_errors_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.ideal");
    std::fs::write(&file, "vars x y\ngen x^2 + z^2\n").unwrap();
    let out = regstab(&["analyze", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:11"));
    std::fs::write(&file, "vars x y\ngen x^2 + y^3\n").unwrap();
    let out = regstab(&["analyze", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[2, 3]"));
}

#[test]
fn analyze_over_the_rationals() {
    let v = json(&regstab(&["analyze", &path("mixed_q.ideal"), "--json"]));
    let s = &v["stabilization"];
    assert_eq!(
        (s["d"].as_u64(), s["t0"].as_u64(), s["b"].as_i64()),
        (Some(3), Some(1), Some(1))
    );
    assert_eq!(s["iprime_is_whole_ideal"], false);
    let out = regstab(&["analyze", &path("mixed_q.ideal"), "--check-strand"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_csv() {
    let out = regstab(&["analyze", &path("stab4.ideal"), "--csv", "--tmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "t,reg,f\n1,9,3\n2,14,2\n3,19,1\n4,24,0\n5,30,0\n");
}

#[test]
fn strict_mode_flags_uncertified_tables() {
    let file = path("stab4.ideal");
    let out = regstab(&["analyze", &file, "--tmax", "4", "--window", "2", "--strict"]);
    assert_eq!(out.status.code(), Some(3));
    let out = regstab(&["analyze", &file, "--tmax", "4", "--window", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = regstab(&["analyze", &file, "--strict", "--check-strand", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stabilization"]["stab"], 4);
    assert_eq!(v["strand_check"]["h1"]["end"], 3);
    assert_eq!(v["certified"], true);
}

#[test]
fn analyze_horizon_too_small() {
    let out = regstab(&["analyze", &path("ci22.ideal"), "--tmax", "1", "--window", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--tmax"));
}

#[test]
fn strand_at_b_for_two_squares() {
    let out = regstab(&["strand", &path("ci22.ideal"), "--mu", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let st = &v["strand"];
    // the strand is free of rank 2: no H^1 and reg_B = 0
    assert_eq!(st["ends"]["h1"]["end"], "-inf");
    assert_eq!(st["rees_betti"]["reg"], 0);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn strand_below_b_passes_the_comparison() {
    let out = regstab(&["strand", &path("ci22.ideal"), "--mu", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["strand"]["d_mu"], 2);
    let anchors: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["anchor"].as_str().unwrap())
        .collect();
    assert!(anchors.contains(&"n-reg-below-rees-reg"));
    assert!(!anchors.contains(&"stab-equals-h1-end-plus-one"));
}

#[test]
fn strand_rejects_small_offsets_and_rationals() {
    let out = regstab(&["strand", &path("ci22.ideal"), "--mu", "-5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-n"));
    let out = regstab(&["strand", &path("mixed_q.ideal"), "--mu", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fp"));
}

#[test]
fn strand_betti_csv() {
    let out = regstab(&["strand", &path("ci22.ideal"), "--mu", "1", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("j,t,beta\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_regstab"))
        .args(["strand", &path("ci22.ideal"), "--mu", "1", "--json"])
        .env("REGSTAB_SEED", "77")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["seed"], 77);
    assert_eq!(v["strand"]["reduction"]["seed"], 77);
}

#[test]
fn suite_runs_and_is_reproducible() {
    let args = [
        "suite",
        "--n",
        "2",
        "--max-deg",
        "4",
        "--count",
        "100",
        "--seed",
        "3",
        "--json",
    ];
    let a = regstab(&args);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    assert_eq!(v["suite"]["fail"], 0);
    assert_eq!(v["suite"]["pass"], 100);
    let b = regstab(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_suite_and_caps() {
    let out = regstab(&["suite", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: pass"));
    assert_eq!(regstab(&["suite", "--n", "5"]).status.code(), Some(1));
    assert_eq!(regstab(&["suite", "--max-deg", "7"]).status.code(), Some(1));
    assert_eq!(regstab(&["suite", "--count", "501"]).status.code(), Some(1));
}

#[test]
fn gvt_check() {
    let out = regstab(&["gvt-check", &path("ci22.ideal"), "--tmax", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert_eq!(v["verdict"], "pass");
    let out = regstab(&["gvt-check", &path("mixed_q.ideal")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_file() {
    let out = regstab(&["analyze", "/nonexistent/ideal"]);
    assert_eq!(out.status.code(), Some(1));
}
