//! End-to-end CLI tests: exit codes, golden fragments of deterministic
//! output, and the gr round-trip back into certify.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradecert"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn stdout_of(cmd: &mut Command) -> (String, Option<i32>) {
    let out = cmd.output().expect("spawn gradecert");
    (String::from_utf8_lossy(&out.stdout).to_string(), out.status.code())
}

#[test]
fn certify_exit_codes() {
    // standard Q-Koszul passes on the trivially-gradeable path algebra
    let (_, code) = stdout_of(bin().args([
        "certify",
        fixture("path_a2.json").to_str().unwrap(),
        "--checks",
        "standard_q_koszul",
        "--max-length",
        "8",
    ]));
    assert_eq!(code, Some(0));

    // koszul fails on k[x]/(x^3) with a witness
    let (out, code) = stdout_of(bin().args([
        "certify",
        fixture("cube_zero.json").to_str().unwrap(),
        "--checks",
        "koszul",
        "--max-length",
        "6",
    ]));
    assert_eq!(code, Some(1));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let report = &doc[0]["reports"]["koszul"];
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["witness"]["degree"], 2);
    assert_eq!(report["witness"]["shift"], 3);

    // inconclusive: Q-Koszul on the self-injective algebra never terminates
    let (_, code) = stdout_of(bin().args([
        "certify",
        fixture("zigzag.json").to_str().unwrap(),
        "--checks",
        "q_koszul",
        "--max-length",
        "5",
    ]));
    assert_eq!(code, Some(2));

    // malformed input
    let dir = std::env::temp_dir().join("gradecert-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (_, code) = stdout_of(bin().args(["certify", bad.to_str().unwrap()]));
    assert_eq!(code, Some(3));
}

#[test]
fn coxeter_golden_lines() {
    let (out, code) =
        stdout_of(bin().args(["coxeter", "dcosets", "A2", "--J1", "s1", "--J2", "s2", "--radius", "3"]));
    assert_eq!(code, Some(0));
    assert_eq!(
        out,
        "# type A2 radius 3 double cosets 2\n\
         min=e size=4 regular=true max=s1.s2\n\
         min=s2.s1 size=2 regular=false max=-\n"
    );

    let (out, code) =
        stdout_of(bin().args(["coxeter", "psi", "A2", "--mu", "s1", "--nu", "s2", "--x", "s2.s1"]));
    assert_eq!(code, Some(0));
    assert_eq!(out, "e\n");

    let (out, code) = stdout_of(bin().args(["coxeter", "ball", "A1~", "--radius", "4"]));
    assert_eq!(code, Some(0));
    assert!(out.starts_with("# type A1~ radius 4 elements 9\n"));

    let (out, code) = stdout_of(bin().args([
        "coxeter", "kl", "A3", "--radius", "6", "--x", "s2", "--w", "s2.s1.s3.s2",
    ]));
    assert_eq!(code, Some(0));
    assert_eq!(out, "s2,s2.s1.s3.s2,1 1\n");

    for (weight, expect) in [("24", "jantzen\ttrue\n"), ("25", "jantzen\tfalse\n")] {
        let (out, code) =
            stdout_of(bin().args(["coxeter", "weights", "A1", "--p", "5", "--jantzen", weight]));
        assert_eq!(code, Some(0));
        assert_eq!(out, expect);
    }

    let (out, code) = stdout_of(bin().args([
        "coxeter", "posets", "A2", "--mu", "s1", "--nu", "s2", "--sign", "minus", "--radius", "3",
    ]));
    assert_eq!(code, Some(0));
    assert_eq!(out, "# type A2 sign Minus elements 1\nelement\ts2.s1\n");
}

#[test]
fn gr_roundtrips_into_certify() {
    let dir = std::env::temp_dir().join("gradecert-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();

    // tildegr on the nilpotent order gives a graded algebra certify accepts
    let graded = dir.join("tilde.json");
    let (_, code) = stdout_of(bin().args([
        "gr",
        fixture("order_nilpotent.json").to_str().unwrap(),
        "--mode",
        "tildegr",
        "--out",
        graded.to_str().unwrap(),
    ]));
    assert_eq!(code, Some(0));
    let (out, code) = stdout_of(bin().args([
        "certify",
        graded.to_str().unwrap(),
        "--checks",
        "koszul,tight",
        "--max-length",
        "6",
    ]));
    // F_5[x]/(x^2) with x in grade 1: Koszul pattern holds to the bound
    assert_eq!(code, Some(2), "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc[0]["reports"]["tight"]["verdict"], "pass");
    assert_eq!(doc[0]["reports"]["koszul"]["verdict"], "inconclusive");

    // the ramified order concentrates in grade 0 and is vacuously tight
    let (out, code) = stdout_of(bin().args([
        "gr",
        fixture("order_ramified.json").to_str().unwrap(),
        "--mode",
        "tildegr",
    ]));
    assert_eq!(code, Some(0));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["grades"], serde_json::json!([0, 0]));

    // gr of a trivially graded algebra re-grades it
    let (out, code) = stdout_of(bin().args([
        "gr",
        fixture("cube_zero_trivial.json").to_str().unwrap(),
        "--mode",
        "gr",
    ]));
    assert_eq!(code, Some(0), "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mut grades: Vec<i64> =
        doc["grades"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    grades.sort_unstable();
    assert_eq!(grades, vec![0, 1, 2]);
}
