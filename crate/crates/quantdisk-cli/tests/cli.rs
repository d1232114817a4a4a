use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quantdisk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn quantdisk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn disk_unit_times_unit() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", &json!({"terms": [{"index": {"P": [0], "Q": [0]}, "re": "1"}]}));
    let o = run(&["product", s(&u), s(&u), "--model", "disk", "--hbar", "1/2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["model"], "disk:1");
    assert_eq!(v["terms"], json!([{"index": {"P": [0], "Q": [0]}, "re": "1/1", "im": "0/1"}]));
}

#[test]
fn cone_level_one_square() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &json!({"terms": [{"index": {"P": [0], "Q": [0], "alpha": 1}, "re": "1"}]}));
    let o = run(&["product", s(&f), s(&f), "--model", "disk", "--output", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"alpha\"\":1}\",-1/1,0/1"), "{out}");
    assert!(out.contains("\"alpha\"\":2}\",4/1,0/1"), "{out}");
}

#[test]
fn wick_commutator_is_two_hbar() {
    let dir = TempDir::new().unwrap();
    // e_{I,J} carries 1/(2ħ)^{|I|+|J|}, so z = (6/7)·e_{(1),0} at ħ = 3/7
    let z = write(&dir, "z.json", &json!({"terms": [{"index": {"I": [1], "J": [0]}, "re": "6/7"}]}));
    let zb = write(&dir, "zb.json", &json!({"terms": [{"index": {"I": [0], "J": [1]}, "re": "6/7"}]}));
    let coeff = |a: &Path, b: &Path| -> Value {
        let o = run(&["product", s(a), s(b), "--model", "wick:1", "--hbar", "3/7"]);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["terms"].as_array().unwrap().iter().find(|t| t["index"] == json!({"I": [0], "J": [0]})).map_or(json!("0/1"), |t| t["re"].clone())
    };
    let ab = coeff(&z, &zb);
    let ba = coeff(&zb, &z);
    let diff: Vec<(i64, i64)> = [ab, ba]
        .iter()
        .map(|c| {
            let (p, q) = c.as_str().unwrap().split_once('/').unwrap();
            (p.parse().unwrap(), q.parse().unwrap())
        })
        .collect();
    let num = diff[0].0 * diff[1].1 - diff[1].0 * diff[0].1;
    let den = diff[0].1 * diff[1].1;
    assert_eq!(num.abs() * 7, 6 * den, "commutator {num}/{den}");
}

#[test]
fn malformed_index_names_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", &json!({"terms": [{"index": {"P": [1]}, "re": "1"}]}));
    let u = write(&dir, "u.json", &json!({"terms": [{"index": {"P": [0], "Q": [0]}, "re": "1"}]}));
    let o = run(&["product", s(&bad), s(&u), "--model", "disk"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("terms[0].index") && err.contains("Q"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", &json!({"terms": [{"index": {"P": [0], "Q": [0]}, "re": "1"}]}));
    assert_eq!(run(&["product", s(&u), s(&u), "--hbar", "-1/2"]).status.code(), Some(3));
    assert_eq!(run(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["product", "missing.json", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["algebra", "list", "--model", "nope:1", "--depth", "1", "--gamma-max", "3"]).status.code(), Some(2));
    let pt = write(&dir, "pt.json", &json!([["1", "1"]]));
    let f = write(&dir, "f.json", &json!({"terms": [{"index": {"P": [0], "Q": [0], "alpha": 1}, "re": "1"}]}));
    assert_eq!(run(&["eval", s(&f), "--point-file", s(&pt), "--model", "cone:1"]).status.code(), Some(3));
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "oracle", "--n", "1", "--level", "3"],
        vec!["check", "positivity", "--hbar", "1/2"],
        vec!["check", "laurent-divergence"],
        vec!["check", "symmetry", "--level", "2"],
        vec!["check", "ideal", "--level", "3"],
        vec!["check", "momentum"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
}

#[test]
fn checks_are_deterministic() {
    let a = run(&["check", "gns", "--output", "csv"]);
    let b = run(&["check", "gns", "--output", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn eval_grid_matches_closed_form() {
    // f_{(1),(1)}(v) = |v|²/(1 − |v|²) at ħ = 1/2
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &json!({"model": "disk:1", "terms": [{"index": {"P": [1], "Q": [1]}, "re": "1"}]}));
    let pts = write(&dir, "p.json", &json!([["0"], ["1/2"], [["1/3", "1/3"]], ["-2/5"], [[0, "3/4"]]]));
    let o = run(&["eval", s(&f), "--point-file", s(&pts), "--output", "json"]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["re"].as_str().unwrap()).collect();
    assert_eq!(got, ["0/1", "1/3", "2/7", "4/21", "9/7"]);
}

#[test]
fn seminorm_table_of_unit() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", &json!({"terms": [{"index": 0, "re": "1"}]}));
    let o = run(&["seminorm", s(&u), "--model", "poly:monomial", "--gamma-max", "3", "--m-max", "1", "--output", "json"]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    let m0: Vec<&Value> = rows.iter().filter(|r| r["m"] == "0" && r["h_exact"] != "0/1").collect();
    assert_eq!(m0.len(), 1);
    assert_eq!(m0[0]["gamma"], "0");
    assert!(rows.iter().filter(|r| r["m"] == "1").all(|r| r["h_exact"] == "1/1"));
}

#[test]
fn r_seminorm_brackets_are_finite() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &json!({"terms": [{"index": {"P": [1], "Q": [0], "alpha": 1}, "re": "1"}]}));
    let o = run(&["seminorm", s(&f), "--model", "cone:1", "--R", "2", "--depth", "16", "--m-max", "1", "--output", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in rows.as_array().unwrap() {
        assert_ne!(r["bracket_hi"], "inf");
        assert_eq!(r["depth"], "16");
    }
}

#[test]
fn gns_commands() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.json", &json!([{"Q": [1], "re": "1", "im": "0"}]));
    let o = run(&["gns", "inner", s(&psi), s(&psi), "--hbar", "1/2", "--output", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["re"], "1/1");
    let o = run(&["gns", "coherent", "--point", "[\"1/2\"]", "--cap", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"][1], json!({"Q": [1], "re": "2/3", "im": "0/1"}));
    let a = write(&dir, "a.json", &json!({"terms": [{"index": {"P": [0], "Q": [1]}, "re": "1"}]}));
    let one = write(&dir, "one.json", &json!([{"Q": [0], "re": "1"}]));
    let o = run(&["gns", "rep", s(&a), s(&one), "--method", "both"]);
    assert!(o.status.success());
    let o = run(&["gns", "positivity", s(&a), "--hbar", "1/2", "--output", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["re"], "1/1");
    assert_eq!(run(&["gns", "positivity", s(&a), "--hbar", "-1/3"]).status.code(), Some(3));
}

#[test]
fn config_file_and_flags() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "output = csv\nmodel = poly:monomial\n").unwrap();
    let o = run(&["algebra", "list", "--config", s(&conf)]);
    assert!(stdout(&o).starts_with("model,parameters,description"));
    let o = run(&["algebra", "list", "--config", s(&conf), "--output", "pretty"]);
    assert!(stdout(&o).starts_with("model "));
}

#[test]
fn element_round_trip_through_product_with_unit() {
    let dir = TempDir::new().unwrap();
    let a = json!({"model": "disk:1", "terms": [
        {"index": {"P": [0], "Q": [1]}, "re": "1/2", "im": "-3/1"},
        {"index": {"P": [2], "Q": [1]}, "re": "0/1", "im": "4/5"}
    ]});
    let fa = write(&dir, "a.json", &a);
    let u = write(&dir, "u.json", &json!({"terms": [{"index": {"P": [0], "Q": [0]}, "re": "1"}]}));
    let o = run(&["product", s(&fa), s(&u)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, a);
}
