use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gbskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbskit")).args(args).env_remove("GBSKIT_MAX_DIGITS").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = gbskit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    gbskit(args).status.code().unwrap()
}

#[test]
fn classify_examples() {
    let v = json(&["classify", &data("bs23.graph")]);
    assert_eq!(v["class"], "BS23Class");
    assert_eq!(v["theorem_case"], 3);
    assert_eq!(v["certificate"]["kind"], "NonUnimodularRInfinity");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["input", "reduced", "delta_image", "class", "theorem_case", "certificate", "notes", "rank_hint"]);

    let v = json(&["classify", &data("z.graph")]);
    assert_eq!(v["class"], "TrivialZ");
    assert_eq!(v["theorem_case"], "elementary");

    let v = json(&["classify", &data("f2z.graph")]);
    assert_eq!(v["theorem_case"], 2);
    assert!(v["notes"][0].as_str().unwrap().starts_with("unimodular: Δ-certificate unavailable"));
    assert_eq!(json(&["classify", &data("bs12.graph")])["class"], "SolvableBS1n(2)");
    assert_eq!(json(&["classify", &data("theta.graph")])["class"], "BS23Class");
}

#[test]
fn malformed_graph_reports_the_line() {
    let out = gbskit(&["classify", &data("malformed.graph")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&["classify", "/nonexistent/file.graph"]), 2);
}

#[test]
fn word_commands() {
    assert_eq!(json(&["nf", &data("bs23.graph"), "t a^2 t^-1"])["canonical"], "a^3");
    let v = json(&["tl", &data("bs23.graph"), "t"]);
    assert_eq!((v["length"].as_u64(), v["kind"].as_str()), (Some(1), Some("hyperbolic")));
    let v = json(&["modulus", &data("bs23.graph"), "t^2"]);
    assert_eq!(v, serde_json::json!({"num": "4", "den": "9"}));
    let v = json(&["commens", &data("bs23.graph"), "t^2"]);
    assert_eq!((v["p"].as_str(), v["q"].as_str()), (Some("4"), Some("9")));

    let out = gbskit(&["nf", &data("bs23.graph"), "t q^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("token 2"));
}

#[test]
fn twisted_examples() {
    let v = json(&["twisted", &data("z.graph"), &data("z_inverse.aut"), &data("z_powers.words"), "--radius", "3"]);
    assert_eq!(v["class_count"], 2);
    assert_eq!(v["partition"]["classes"].as_array().unwrap().len(), 2);
    assert!(v["partition"]["status"].as_str().unwrap().contains("distinct at radius 3"));

    let v = json(&["twisted", &data("bs23.graph"), "identity", &data("bs23_t_powers.words"), "--radius", "1"]);
    assert_eq!(v["lower_bound"]["count"], 11);
    assert_eq!(v["certificate"]["kind"], "NonUnimodularRInfinity");

    let out = gbskit(&["twisted", &data("bs23.graph"), &data("bs23_broken.aut"), &data("bs23_t_powers.words")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t a^2 t^-1 a^-3"));
}

#[test]
fn certify_and_ses_check() {
    let v = json(&["certify", &data("bs23.graph"), &data("bs23_inverse.aut")]);
    assert_eq!(v["certificate"]["modulus"]["num"], "2");
    let v = json(&["certify", &data("f2z.graph"), "identity"]);
    assert_eq!(v["certificate"]["reason"], "unimodular");

    let v = json(&["ses-check", &data("f2z.graph"), &data("swap.aut"), "--samples", "200"]);
    assert_eq!((v["passed"].as_u64(), v["failed"].as_u64()), (Some(200), Some(0)));
    assert_eq!(code(&["ses-check", &data("bs23.graph"), "identity"]), 4);
    let v = json(&["ses-check", &data("bs11.graph"), "identity", "--samples", "20"]);
    assert_eq!(v["passed"], 20);
}

#[test]
fn caps_exit_with_5() {
    assert_eq!(code(&["conj-growth", &data("f2z.graph"), "a", "--radius", "4", "--max-ball", "100"]), 5);
    assert_eq!(code(&["twisted", &data("f2z.graph"), "identity", &data("z_powers.words"), "--radius", "5"]), 5);
    assert_eq!(code(&["nf", &data("bs23.graph"), "a^1000", "--max-digits", "2"]), 5);
    let out = Command::new(env!("CARGO_BIN_EXE_gbskit"))
        .args(["nf", &data("bs23.graph"), "a^1000"])
        .env("GBSKIT_MAX_DIGITS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(code(&["nf", &data("bs23.graph"), "a^1000"]), 0);
}

#[test]
fn text_format() {
    let out = gbskit(&["modulus", &data("bs23.graph"), "t^2", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "num: 4\nden: 9\n");
    let out = gbskit(&["classify", &data("bs23.graph"), "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("class: BS23Class"));
}
