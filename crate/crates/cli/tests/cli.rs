use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn operad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operad")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = operad(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn groebner_lie() {
    let (code, v) = json(&["groebner", "lie", "--max-arity", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_quadratic"], true);
    assert_eq!(v["leading_terms"], serde_json::json!(["b(b(1,3),2)"]));
    assert_eq!(v["complete_up_to"], 6);
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2, 6, 24, 120]));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = operad(&["groebner", "dend-star", "--max-arity", "5", "--threads", "1"]);
    let b = operad(&["groebner", "dend-star", "--max-arity", "5", "--threads", "4"]);
    let c = operad(&["groebner", "dend-star", "--max-arity", "5", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn dual_output_is_accepted_everywhere() {
    let out = operad(&["dual", "prelie"]);
    assert!(out.status.success());
    let path = scratch("prelie-dual.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["dims", p, "--max-arity", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(json(&["groebner", p, "--max-arity", "4"]).1["is_quadratic"], true);
    assert_eq!(json(&["normal-monomials", p, "--arity", "3", "--max-arity", "4"]).1["count"], 3);
    assert_eq!(json(&["check", "free-ns", p, "--max-arity", "4"]).0, 1);
    assert_eq!(json(&["check", "small", p, "--max-arity", "4"]).0, 0);
    assert_eq!(json(&["check", "o2-hypothesis", p, "--max-arity", "4"]).0, 1);
    let again = operad(&["dual", p]);
    let dd = scratch("prelie-dd.json");
    std::fs::write(&dd, &again.stdout).unwrap();
    let orig = operad(&["groebner", "prelie", "--max-arity", "4"]);
    let round = operad(&["groebner", dd.to_str().unwrap(), "--max-arity", "4"]);
    assert_eq!(orig.stdout, round.stdout);
}

#[test]
fn compat_output_round_trips() {
    let out = operad(&["compat", "com", "--kind", "linear"]);
    assert!(out.status.success());
    let path = scratch("com2.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["check", "module-free", p, "--sub", "m1", "--max-arity", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["k_dims"], serde_json::json!([1, 1, 2, 6, 24]));
    assert_eq!(json(&["dims", p, "--max-arity", "5"]).1["dims"], json(&["dims", "com2", "--max-arity", "5"]).1["dims"]);

    let gamma = scratch("as-gamma.json");
    std::fs::write(
        &gamma,
        r#"{"name": "as", "mode": "nonsymmetric", "generators": [{"name": "m", "arity": 2}],
            "gamma": [[[[1]], [[-1]], [[0]]]]}"#,
    )
    .unwrap();
    let total = operad(&["compat", gamma.to_str().unwrap(), "--kind", "total"]);
    assert!(total.status.success());
    let tpath = scratch("2as.json");
    std::fs::write(&tpath, &total.stdout).unwrap();
    assert_eq!(json(&["dims", tpath.to_str().unwrap(), "--max-arity", "5"]).1["dims"], serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn exit_codes() {
    assert_eq!(operad(&["check", "free-ns", "lie", "--max-arity", "4"]).status.code(), Some(0));
    assert_eq!(operad(&["check", "free-ns", "com", "--max-arity", "4"]).status.code(), Some(1));
    assert_eq!(operad(&["dims", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(operad(&["check", "module-free", "lie", "--sub", "zz", "--max-arity", "3"]).status.code(), Some(2));
    assert_eq!(operad(&["groebner", "lie", "--order", "no-such-order"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"name\": 1}").unwrap();
    assert_eq!(operad(&["dims", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn series_tools() {
    let (code, v) = json(&["series", "koszul-test", "--dims", "1,2,3", "--degree", "12"]);
    assert_eq!(code, 1);
    assert_eq!(v["first_negative_degree"], 10);
    assert_eq!(json(&["series", "koszul-test", "--dims", "1,1,2,6,24,120"]).0, 0);
    let out = operad(&["series", "inverse", "--dims", "1,1,1,1", "--kind", "ogf"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "t - t^2 + t^3 - t^4");
    let (code, v) = json(&["series", "compose", "--dims", "1,1,1", "--g", "1,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "egf");
    assert_eq!(v["rendered"], "t + t^2 + t^3");
    assert_eq!(json(&["series", "inverse", "--dims", "0,1"]).0, 2);
}

#[test]
fn repro_pipelines() {
    let (code, v) = json(&["repro", "nonsymfree"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["repro", "n2-not-koszul"]);
    assert_eq!(code, 0, "{v}");
    for id in ["prelie-perm", "lie2", "prelie-over-lie", "dend-over-as", "o2-pbw", "koszul-pairs"] {
        assert_eq!(json(&["repro", id]).0, 0, "{id}");
    }
    assert_eq!(operad(&["repro", "nope"]).status.code(), Some(2));
}

#[test]
fn presets_are_listed() {
    let (code, v) = json(&["presets", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|x| x["name"].as_str().unwrap()).collect();
    for name in ["lie", "prelie", "prelie-dot", "com", "perm", "dend", "dias", "n2", "2com"] {
        assert!(names.contains(&name), "{name}");
    }
}
