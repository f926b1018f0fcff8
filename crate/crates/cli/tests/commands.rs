use std::process::{Command, Output};

use serde_json::Value;

fn reflexo(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexo"))
        .args(args)
        .env("REFLEXO_CACHE", cache)
        .output()
        .expect("run reflexo")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_small_period() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&reflexo(dir.path(), &["analyze", "3", "--period", "10", "--no-pf"]));
    let got: Vec<&str> = v["period"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(got, ["1", "0", "0", "6", "0", "0", "90", "0", "0", "1680", "0"]);
    assert_eq!(v["mw"]["group"], "Z/3");
    assert_eq!(v["mw"]["detT"], 9);
}

#[test]
fn analyze_nine_and_heights() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&reflexo(dir.path(), &["analyze", "9", "--period", "6", "--no-pf"]));
    assert_eq!(v["fibreSummary"], "I3, IV*, I1");
    let fibres = v["fibres"].as_array().unwrap();
    assert!(fibres.iter().any(|f| f["type"] == "IV*" && f["where"] == "6"));
    assert!(fibres.iter().any(|f| f["type"] == "I3" && f["where"] == "infinity"));
    let b = json(&reflexo(dir.path(), &["analyze", "4b", "--period", "6", "--no-pf"]));
    assert_eq!(
        b["mw"]["heights"],
        serde_json::json!([["1/2", "1/4", "3/4"], ["1/4", "1/8", "3/8"], ["3/4", "3/8", "9/8"]])
    );
}

#[test]
fn cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["analyze", "4a", "--period", "30"];
    let fresh = reflexo(dir.path(), &args);
    assert!(fresh.status.success());
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let cached = reflexo(dir.path(), &args);
    assert_eq!(fresh.stdout, cached.stdout);
    let uncached = Command::new(env!("CARGO_BIN_EXE_reflexo"))
        .args(["--no-cache"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(fresh.stdout, uncached.stdout);
    let v = json(&fresh);
    assert_eq!(v["operator"]["dualForm"], "(D^2) + t^2*(-16*D^2-32*D-16)");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = reflexo(dir.path(), &["analyze", "10z"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("valid names"));
    assert_eq!(reflexo(dir.path(), &["svg", "3", "sideways"]).status.code(), Some(2));
    assert_eq!(reflexo(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_fails_on_foreign_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    // 4a under the name 4b
    std::fs::write(&cat, r#"[{"name": "4b", "vertices": [[1,0],[0,1],[-1,0],[0,-1]]}]"#).unwrap();
    let out = reflexo(dir.path(), &["--catalog", cat.to_str().unwrap(), "table2", "--check"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));
}

#[test]
fn small_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflexo(dir.path(), &["period", "4a", "-n", "4"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 1\n1 0\n2 4\n3 0\n4 36\n");
    let out = reflexo(dir.path(), &["pf", "3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("(D^2) + t^3*(-27*D^2-81*D-54)"));
    let out = reflexo(dir.path(), &["classes"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 8);
    let out = reflexo(dir.path(), &["mutations", "4c"]);
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.contains("-> 4a")));
    let out = reflexo(dir.path(), &["catalog"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 16);
}

#[test]
fn svg_outputs_parse() {
    let dir = tempfile::tempdir().unwrap();
    for (name, what) in [("3", "polygon"), ("3", "dual"), ("6b", "fibres"), ("9", "fibres")] {
        let out = reflexo(dir.path(), &["svg", name, what]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        if what == "dual" {
            assert_eq!(text.matches("class=\"lattice\"").count(), 10);
        }
    }
}
