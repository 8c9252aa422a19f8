//! Machine sections of the CLI against checked-in golden files.
//!
//! Set `ARH_UPDATE_GOLDEN=1` to rewrite the files.

mod common;

use std::process::Command;

use common::{corpus, golden_problems, machine, reverify_problems, run};

#[test]
fn machine_sections_match_golden_files() {
    let problems = golden_problems(std::env::var_os("ARH_UPDATE_GOLDEN").is_some());
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn verify_triangle_reaccepts_emitted_certificates() {
    let problems = reverify_problems();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let a2 = corpus("a2.alg");
    let (_, out) = run(&["ar-triangle", "--ending-at", "stalk(P1,0)", &a2]);
    let tmp = std::env::temp_dir().join(format!("arh-tamper-{}.txt", std::process::id()));
    // replace the connecting map by zero
    let bad = out.replace("map w\ncomp 0 [2x1: 1 ; 0]", "map w\ncomp 0 [2x1: 0 ; 0]");
    assert_ne!(bad, out);
    std::fs::write(&tmp, bad).unwrap();
    let (code, _) = run(&["verify-triangle", tmp.to_str().unwrap(), &a2]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(code, 3);
}

#[test]
fn exit_codes() {
    let a2 = corpus("a2.alg");
    assert_eq!(run(&["proj", "no-such-file.alg"]).0, 2);
    assert_eq!(run(&["ar-triangle", "--ending-at", "stalk(P9,0)", &a2]).0, 2);
    assert_eq!(run(&["ar-triangle", "--ending-at", "stalk(S1,0)", &a2]).0, 2);
    assert_eq!(run(&["gp-check", "S1", &corpus("local22.alg")]).0, 1);
    assert_eq!(run(&["gorenstein", &a2, "--field", "GF(4)"]).0, 2);
}

#[test]
fn default_bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_arhomotopy"))
        .args(["inj-dim", &corpus("local22.alg")])
        .env("ARH_DEFAULT_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("bound-exceeded(3)"));
}

#[test]
fn field_override_changes_the_algebra() {
    let (code, out) = run(&["algebra", "check", &corpus("dual.alg"), "--field", "GF(2)"]);
    assert_eq!(code, 0);
    assert!(machine(&out).starts_with("field GF(2)\n"));
}
