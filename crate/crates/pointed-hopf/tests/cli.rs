use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn phopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phopf")).args(args).output().expect("run phopf")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let out = phopf(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("phopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn check_names(v: &Value) -> Vec<(String, bool)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["passed"].as_bool().unwrap()))
        .collect()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(phopf(&["--help"]).status.code(), Some(0));
    let help = String::from_utf8(phopf(&["--help"]).stdout).unwrap();
    assert!(help.contains("zN^k"));
    assert_eq!(phopf(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(phopf(&["theta"]).status.code(), Some(2));
}

#[test]
fn invalid_inputs_exit_two() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = phopf(&["lift", "verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));
    assert_eq!(phopf(&["lift", "build", "--group", "3", "--g", "1", "--chi", "0"]).status.code(), Some(2));
    assert_eq!(phopf(&["lift", "build", "--group", "9", "--g", "1", "--chi", "1", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(phopf(&["census", "p3", "--p", "4"]).status.code(), Some(2));
    assert_eq!(phopf(&["family", "build", "--M", "2", "--N", "3", "--q", "z4", "--lambda", "1"]).status.code(), Some(2));
}

#[test]
fn verification_failures_exit_one() {
    let (code, v) = json(&[
        "overlaps", "check", "--group", "9", "--g", "1;2", "--chi", "3;3", "--lambda", "1,2=1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], Value::Bool(false));
    let a = scratch("u1.json");
    let b = scratch("h1.json");
    json(&["lift", "build", "--group", "3", "--g", "2;2", "--chi", "2;1", "--lambda", "1,2=1", "--save", a.to_str().unwrap()]);
    json(&["lift", "build", "--group", "3", "--g", "2;1", "--chi", "1;1", "--save", b.to_str().unwrap()]);
    let (code, v) = json(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn family_iso_reports_both_deciders() {
    let (code, v) = json(&["family", "iso", "--M", "2", "--N", "3", "--q", "z3", "--lambda", "1", "--lambda2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["criterion"], "not isomorphic");
    assert_eq!(v["fields"]["search"], "not isomorphic");
    let (code, v) = json(&["family", "iso", "--M", "2", "--N", "3", "--q", "z3", "--lambda", "1", "--lambda2", "z3^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["result"], "isomorphic");
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["--output", "json", "theta", "--group", "3,3"],
        vec!["--output", "json", "lift", "build", "--group", "4,4", "--g", "1,0", "--chi", "2,0", "--mu", "1"],
        vec!["--output", "json", "family", "aut", "--M", "2", "--N", "3", "--q", "z3", "--lambda", "1"],
    ] {
        let a = phopf(&args);
        let b = phopf(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn build_save_load_verify_round_trip() {
    let lift = scratch("taft.json");
    let (code, built) = json(&["lift", "build", "--group", "3", "--g", "1", "--chi", "1", "--save", lift.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, verified) = json(&["lift", "verify", lift.to_str().unwrap()]);
    assert_eq!(code, 0);
    let built = check_names(&built);
    for c in check_names(&verified) {
        assert!(built.contains(&c), "{c:?}");
    }

    let qls = scratch("qls.json");
    let boson = scratch("boson.json");
    let (code, _) = json(&[
        "qls", "build", "--group", "9", "--g", "1;2", "--chi", "3;3",
        "--save", qls.to_str().unwrap(), "--save-bosonization", boson.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&["qls", "verify", qls.to_str().unwrap()]).0, 0);
    assert_eq!(json(&["qls", "verify", boson.to_str().unwrap()]).0, 0);

    let dual = scratch("dual.json");
    assert_eq!(json(&["dual", lift.to_str().unwrap(), "--save", dual.to_str().unwrap()]).0, 0);
    let (code, v) = json(&["iso", lift.to_str().unwrap(), dual.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["invariants", dual.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["grouplike_count"], Value::from(3));
}

#[test]
fn lifting_reports() {
    let (code, v) = json(&["lift", "filtration", "--group", "6", "--g", "1;1", "--chi", "2;4", "--mu", "1,1", "--lambda", "1,2=1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["fields"]["computed filtration"], serde_json::json!([6, 18, 36, 48, 54]));
    let (code, v) = json(&["overlaps", "check", "--group", "9", "--g", "1;2", "--chi", "3;3", "--symbolic"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["family", "aut", "--M", "2", "--N", "3", "--q", "z3", "--lambda", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["automorphisms"], Value::from(9));
}

#[test]
fn theta_and_census() {
    let (code, v) = json(&["theta", "--group", "3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["fields"]["theta"], Value::from(4));
    let (code, v) = json(&["census", "p3", "--p", "3"]);
    assert_eq!(code, 0);
    assert!(check_names(&v).iter().all(|(_, ok)| *ok));
    assert_eq!(v["fields"]["entries"].as_array().map(|a| a.len()), Some(14));
}
