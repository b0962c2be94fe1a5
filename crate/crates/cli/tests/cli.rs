use std::path::Path;
use std::process::{Command, Output};

fn hodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge"))
        .args(args)
        .env_remove("HODGE_CACHE")
        .output()
        .expect("run hodge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn c_constant_for_genus_three() {
    let o = hodge(&["lambda", "--class", "c", "--genus", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c_3 = 41/580608\n");
}

#[test]
fn b_sequence_as_json() {
    let o = hodge(&["bseq", "--max-genus", "1", "--format", "json"]);
    assert_eq!(stdout(&o), "[\"1\",\"1/24\"]\n");
    let o = hodge(&["bseq", "--max-genus", "1"]);
    assert_eq!(stdout(&o), "[1, 1/24]\n");
}

#[test]
fn three_point_psi_integral() {
    let o = hodge(&["psi", "--genus", "0", "--exponents", "0,0,0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["class"], "psi");
}

#[test]
fn exponents_in_any_order() {
    let a = hodge(&["lambda", "--class", "g", "--genus", "2", "--exponents", "1,2,1", "--format", "csv"]);
    let b = hodge(&["lambda", "--class", "g", "--genus", "2", "--exponents", "1,1,2", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), "genus,exponents,class,value\n2,2;1;1,g,7/480\n");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["table", "--max-genus", "5", "--format", "json"];
    let (a, b) = (hodge(&args), hodge(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v[4]["c"], "21481/367873228800");
    assert_eq!(v[4]["b"], "73/3503554560");
    assert!(!stdout(&a).contains('.'), "no floats in JSON");
}

#[test]
fn euler_class_golden() {
    let o = hodge(&["euler", "--dim", "2", "--genus", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relative"], "-c_1λ_gλ_{g-1} + c_1^2λ_gλ_{g-2}");
    assert_eq!(v["euler"], "-c_1λ_5λ_4 + c_1^2λ_5λ_3");
    let o = hodge(&["euler", "--dim", "1", "--genus", "1"]);
    assert!(stdout(&o).starts_with("e = -λ_1 + c_1"));
}

#[test]
fn degree_zero_invariants() {
    let o = hodge(&["gw0", "--target", "P1", "--genus", "2", "--insertions", "1:2"]);
    assert_eq!(stdout(&o), "<tau_2(H^1)>_{2,0}^P1 = 7/5760\n");
    let o = hodge(&["gw0", "--target", "P1", "--genus", "2", "--insertions", "0:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "-1/240");
}

#[test]
fn exit_codes() {
    assert_eq!(hodge(&["psi", "--genus", "0", "--exponents", "0,0"]).status.code(), Some(3));
    assert_eq!(hodge(&["psi", "--genus", "x"]).status.code(), Some(2));
    assert_eq!(hodge(&["lambda", "--class", "zz", "--genus", "2"]).status.code(), Some(2));
    assert_eq!(hodge(&["gw0", "--target", "Q", "--genus", "2"]).status.code(), Some(2));
    assert_eq!(hodge(&["gw0", "--target", "P1", "--genus", "2", "--insertions", "1-2"]).status.code(), Some(2));
    assert_eq!(hodge(&["euler", "--dim", "4", "--genus", "2"]).status.code(), Some(3));
    assert_eq!(hodge(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let o = hodge(&["lambda", "--class", "c", "--genus", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("c_g needs g >= 1"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "table", "--max-genus", "5"],
        vec!["verify", "--suite", "closed-vs-recursion", "--max-genus", "3"],
        vec!["verify", "--suite", "commutators"],
        vec!["verify", "--suite", "mumford"],
        vec!["verify", "--suite", "euler"],
        vec!["verify", "--suite", "string-dilaton", "--max-genus", "2"],
        vec!["verify", "--suite", "annihilation"],
    ] {
        let o = hodge(&args);
        assert!(o.status.success(), "{args:?}:\n{}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("pass"), "{args:?}");
    }
}

#[test]
fn verify_as_csv() {
    let o = hodge(&["verify", "--suite", "mumford", "--max-genus", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "suite,check,passed,detail\nmumford,g=1,true,3 coefficients reduce\nmumford,g=2,true,5 coefficients reduce\n");
}

fn cached(path: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--stats", "--cache", path.to_str().unwrap()];
    all.extend_from_slice(args);
    hodge(&all)
}

#[test]
fn cache_round_trip_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let live = dir.path().join("live.cache");
    let compact = dir.path().join("compact.cache");
    let query = ["lambda", "--class", "gg2", "--genus", "4", "--exponents", "3,2"];

    let first = cached(&live, &query);
    assert!(first.status.success());
    assert!(!stderr(&first).contains("computed 0"));

    let export = cached(&live, &["cache", "export", "--out", compact.to_str().unwrap()]);
    assert!(export.status.success());
    assert!(stderr(&export).contains("computed 0"));

    let again = cached(&compact, &query);
    assert_eq!(again.stdout, first.stdout);
    assert!(stderr(&again).contains("computed 0"), "{}", stderr(&again));

    let via_env = Command::new(env!("CARGO_BIN_EXE_hodge"))
        .args(["--stats"])
        .args(query)
        .env("HODGE_CACHE", &compact)
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, first.stdout);
    assert!(stderr(&via_env).contains("computed 0"));

    std::fs::write(&live, "hodge-cache 99 created=0\n").unwrap();
    let stale = cached(&live, &query);
    assert!(stale.status.success());
    assert!(stderr(&stale).contains("another format version"));
    assert_eq!(stale.stdout, first.stdout);
}
