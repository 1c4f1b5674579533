use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use looproot_core::catalog::named;
use looproot_core::loop_classifier::{enumerate_loop_subsystems, LoopEnumeration};
use looproot_core::{HeightBound, RootSystem};
use looproot::formats::ClassifiedPairRecord;
use serde_json::Value;

fn looproot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_looproot")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn census_matches_library_count() {
    let dir = tempfile::tempdir().unwrap();
    let gcm = write(dir.path(), "b2.json", r#"{"labels":["a","b"],"matrix":[[2,-2],[-1,2]]}"#);
    let out = looproot(&["census", "--gcm", &gcm, "--modulus-bound", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rs = RootSystem::generate(&named("b2").unwrap(), HeightBound::UnboundedFinite).unwrap();
    let expected = enumerate_loop_subsystems(&rs, &LoopEnumeration::new(2)).unwrap().len();
    let v = json(&out);
    assert_eq!(v["count"], expected);
    assert_eq!(v["pairs"].as_array().unwrap().len(), expected);
}

#[test]
fn census_output_is_sorted_and_deterministic() {
    let a = looproot(&["census", "--type", "g2", "--modulus-bound", "3", "--parallelism", "1"]);
    let b = looproot(&["census", "--type", "g2", "--modulus-bound", "3", "--parallelism", "4"]);
    let c = looproot(&["census", "--type", "g2", "--modulus-bound", "3", "--verbose"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(stderr(&c).contains("command=census"));
    assert!(a.stderr.is_empty());
    let keys: Vec<String> = json(&a)["pairs"].as_array().unwrap().iter()
        .map(|p| {
            let record: ClassifiedPairRecord = serde_json::from_value(p.clone()).unwrap();
            serde_json::to_string(&record).unwrap()
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn scalings_for_g2_agree() {
    let out = looproot(&["scalings", "--type", "g2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["agree"], true);
    let basics: Vec<(i64, i64)> = v["basics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| (b["m"]["a1"].as_i64().unwrap(), b["m"]["a2"].as_i64().unwrap()))
        .collect();
    assert_eq!(basics, [(1, 1), (1, 3)]);
    let tsv = String::from_utf8(looproot(&["scalings", "--type", "g2", "--format", "tsv"]).stdout).unwrap();
    assert_eq!(tsv.lines().count(), 3);
    assert!(tsv.lines().skip(1).all(|l| l.ends_with("true\ttrue\ttrue")));
}

#[test]
fn build_then_classify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let pair = r#"{"support":[[-1],[1]],"gamma":[[1]],"m":{"a1":2},"xbar":{"a1":1}}"#;
    let input = write(dir.path(), "pair.json", pair);
    let out = looproot(&["build", "--type", "a1", "--input", &input]);
    assert!(out.status.success(), "{}", stderr(&out));
    let family = json(&out);
    for e in family["entries"].as_array().unwrap() {
        assert_eq!((e["offset"].as_i64(), e["modulus"].as_i64()), (Some(1), Some(2)));
    }
    let family_path = write(dir.path(), "family.json", &family.to_string());
    let back = looproot(&["classify", "--type", "a1", "--input", &family_path]);
    assert!(back.status.success());
    assert_eq!(json(&back), serde_json::from_str::<Value>(pair).unwrap());

    let ok = looproot(&["verify", "--type", "a1", "--input", &family_path, "--oracle", "--window", "12"]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let v = json(&ok);
    assert_eq!(v["valid"], true);
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["oracle"]["predicted"], 24);
}

#[test]
fn verify_reports_failing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let family = r#"{"entries":[
        {"root":[1,0],"offset":1,"modulus":0},{"root":[-1,0],"offset":-1,"modulus":0},
        {"root":[0,1],"offset":0,"modulus":0},{"root":[0,-1],"offset":0,"modulus":0},
        {"root":[1,1],"offset":0,"modulus":0},{"root":[-1,-1],"offset":0,"modulus":0}]}"#;
    let input = write(dir.path(), "bad.json", family);
    let out = looproot(&["verify", "--type", "a2", "--input", &input, "--oracle", "--window", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"]["kind"], "Containment");
    assert!(v["violation"]["alpha"].is_array() && v["violation"]["beta"].is_array());
    assert!(stderr(&out).starts_with("loop_classifier::NotARootFunction: "));
}

#[test]
fn usage_and_domain_exit_codes() {
    assert_eq!(looproot(&["roots"]).status.code(), Some(2));
    assert_eq!(looproot(&["frobnicate", "--type", "a2"]).status.code(), Some(2));
    assert_eq!(looproot(&["census", "--type", "a2"]).status.code(), Some(2));
    assert_eq!(looproot(&["roots", "--type", "z9"]).status.code(), Some(2));
    assert_eq!(looproot(&["roots", "--type", "a2", "--height-bound", "0"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let floats = write(dir.path(), "f.json", r#"{"labels":["a","b"],"matrix":[[2.0,-1],[-1,2]]}"#);
    let out = looproot(&["roots", "--gcm", &floats]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("formats::InvalidJson: "));

    let bad = write(dir.path(), "g.json", r#"{"labels":["a","b"],"matrix":[[2,-1],[0,2]]}"#);
    let out = looproot(&["roots", "--gcm", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("root_core::AsymmetricZero: "));

    let out = looproot(&["roots", "--type", "a1~"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("root_core::SafetyCapExceeded: "));
}

#[test]
fn gcm_file_takes_precedence_over_type() {
    let dir = tempfile::tempdir().unwrap();
    let gcm = write(dir.path(), "a1.json", r#"{"labels":["x"],"matrix":[[2]]}"#);
    let out = looproot(&["roots", "--gcm", &gcm, "--type", "g2"]);
    assert_eq!(json(&out)["count"], 2);
}

#[test]
fn safety_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_looproot"))
        .args(["roots", "--type", "a4"])
        .env("LOOPROOT_SAFETY_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SafetyCapExceeded"));
}

#[test]
fn affine_roots_with_height_bound() {
    let out = looproot(&["roots", "--type", "a1~", "--height-bound", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 12);
    assert_eq!(v["complete"], false);
    let out = looproot(&["roots", "--type", "a1~", "--height-bound", "101", "--positive"]);
    assert_eq!(json(&out)["count"], 102);
}

#[test]
fn subsystems_listing() {
    let out = looproot(&["subsystems", "--type", "b2"]);
    let v = json(&out);
    assert_eq!(v["count"], 8);
    let full = &v["subsystems"].as_array().unwrap().last().unwrap();
    assert_eq!(full["cartan"], serde_json::json!([[2, -2], [-1, 2]]));
    assert_eq!(full["components"], serde_json::json!([["a1", "a2"]]));
}
