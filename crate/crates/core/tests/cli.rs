use std::process::{Command, Output};

use lrslab::cli::{EXIT_CAPPED, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use lrslab::format::canonical_json;
use serde_json::{json, Value};

fn lrslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrslab")).args(args).env_remove("LRSLAB_THREADS").output().expect("binary runs")
}

/// Parses stdout and checks that re-serializing reproduces it byte for byte.
fn json_out(args: &[&str]) -> (i32, Value) {
    let out = lrslab(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(canonical_json(&v), text, "{args:?} is not canonical");
    (out.status.code().unwrap(), v)
}

#[test]
fn minpoly_text_and_json() {
    let out = lrslab(&["minpoly", "--field", "7", "--seq", "1,3,4,6,5,2"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x^3+2*x^2+2*x+1\n");

    let (code, v) = json_out(&["minpoly", "--json", "--field", "3^2", "--seq", "1,w,1+w,1+2*w,2,2*w,2+2*w,2+w"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["f_s_text"], json!("x^2+2*x+2"));
}

#[test]
fn classify_and_verify() {
    let (code, v) = json_out(&["classify", "--json", "--field", "5", "--seq", "1,2,4,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["is_cyclic"], json!(true));
    let (_, v) = json_out(&["classify", "--json", "--field", "5", "--seq", "1,4,2,3", "--f", "x^3+x^2+x+1"]);
    assert_eq!(v["is_cyclic"], json!(false));

    let (_, v) = json_out(&["verify", "--json", "--field", "7", "--seq", "1,3,4,6,5,2"]);
    assert_eq!(v["ans"], json!(true));
    let (_, v) = json_out(&["verify", "--json", "--field", "7", "--seq", "1,3,2,6,4,5"]);
    assert_eq!(v["ans"], json!(false));
}

#[test]
fn constructions_round_trip_through_files() {
    let (code, base) = json_out(&["minpoly", "--json", "--field", "7", "--seq", "1,3,4,6,5,2"]);
    assert_eq!(code, EXIT_OK);
    let path = std::env::temp_dir().join(format!("lrslab_base_{}.json", std::process::id()));
    std::fs::write(&path, canonical_json(&base)).unwrap();
    let (code, from_file) = json_out(&["construct", "extend", "--json", "--base", path.to_str().unwrap(), "--k", "2"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, EXIT_OK);
    let (_, inline) = json_out(&["extend", "--json", "--field", "7", "--seq", "1,3,4,6,5,2", "--k", "2"]);
    assert_eq!(from_file, inline);

    let (code, _) = json_out(&["construct", "halving", "--json", "--p", "23"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = json_out(&["construct", "alternating", "--json", "--p", "23"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn search_exit_codes() {
    let (code, v) = json_out(&["search", "ans", "--json", "--m", "6", "--p-max", "13", "--threads", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["characteristics_with_hits"], json!([7]));
    let (code, v) = json_out(&["search", "ans", "--json", "--m", "6", "--primes", "7", "--cap", "10"]);
    assert_eq!(code, EXIT_CAPPED);
    assert_eq!(v["exhaustive"], json!(false));
    let (code, v) = json_out(&["search", "ans", "--json", "--m", "8", "--p-max", "20"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["short_circuit"], json!("prime power size"));
}

#[test]
fn threads_from_environment() {
    let args = ["search", "ans", "--json", "--m", "10", "--p-max", "11"];
    let base = lrslab(&args);
    let env = Command::new(env!("CARGO_BIN_EXE_lrslab")).args(args).env("LRSLAB_THREADS", "3").output().unwrap();
    assert_eq!(base.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_lrslab")).args(args).env("LRSLAB_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(lrslab(&[]).status.code(), Some(EXIT_USAGE));
    assert_eq!(lrslab(&["minpoly", "--field", "7"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(lrslab(&["--help"]).status.code(), Some(EXIT_OK));
    assert_eq!(lrslab(&["--version"]).status.code(), Some(EXIT_OK));

    let out = lrslab(&["minpoly", "--field", "6", "--seq", "1,2"]);
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
    assert!(out.stdout.is_empty());
    assert_eq!(lrslab(&["construct", "halving", "--p", "13"]).status.code(), Some(EXIT_DOMAIN));
    assert_eq!(lrslab(&["minpoly", "--field", "7", "--seq", "1,2,1,2"]).status.code(), Some(EXIT_DOMAIN));
}

#[test]
fn selftest_passes_and_filters() {
    let (code, v) = json_out(&["selftest", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["all_passed"], json!(true));
    let (_, only) = json_out(&["selftest", "--json", "--filter", "construct"]);
    let n = only["cases"].as_array().unwrap().len();
    assert!(n > 0 && n < v["cases"].as_array().unwrap().len());
    let out = lrslab(&["selftest", "--filter", "poly"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with(" passed, 0 failed\n"), "{text}");
}
