//! Behavioral tests of the binary: exit codes, golden round-trips, and
//! output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn beamsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beamsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Drops wall-clock lines so deterministic output can be compared.
fn without_elapsed(s: &str) -> String {
    s.lines()
        .filter(|l| !l.starts_with("elapsed_ms:"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gen_round_trips_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let smat = dir.path().join("h4.smat");
    let out = beamsplit(&[
        "gen",
        "sylvester",
        "--k",
        "2",
        "--out",
        smat.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&smat).unwrap();
    let parsed = beamsplit_core::SignMatrix::parse_smat(&text).unwrap();
    assert_eq!(parsed.to_smat(), text);

    let pmat = dir.path().join("f8.pmat");
    let out = beamsplit(&[
        "gen",
        "schwinger",
        "--n",
        "8",
        "--out",
        pmat.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&pmat).unwrap();
    let parsed = beamsplit_core::PhaseMatrix::parse_pmat(&text).unwrap();
    assert_eq!(parsed.to_pmat(), text);

    // regenerating produces the identical file
    let again = beamsplit(&["gen", "schwinger", "--n", "8"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn gen_rejects_bad_parameters_with_usage_code() {
    assert_eq!(code(&beamsplit(&["gen", "paley", "--q", "5"])), 2);
    assert_eq!(code(&beamsplit(&["gen", "sylvester", "--k", "13"])), 2);
}

#[test]
fn search_reports_inadmissible_orders() {
    let out = beamsplit(&["search", "--order", "6"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("outcome: INADMISSIBLE"));
}

#[test]
fn search_finds_order_twelve_deterministically() {
    let a = beamsplit(&["search", "--order", "12"]);
    let b = beamsplit(&["search", "--order", "12"]);
    assert_eq!(code(&a), 0);
    let text = stdout(&a);
    assert!(text.contains("outcome: FOUND"));
    assert!(text.contains("H 12\n"));
    assert!(text.contains("nodes: "));
    assert!(text.contains("elapsed_ms: "));
    assert_eq!(without_elapsed(&text), without_elapsed(&stdout(&b)));
}

#[test]
fn search_count_mode_reports_the_frozen_count() {
    let out = beamsplit(&["search", "--order", "4", "--count"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("count: 6\n"));
}

#[test]
fn verify_hadamard_distinguishes_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.smat");
    beamsplit(&["gen", "paley", "--q", "11", "--out", good.to_str().unwrap()]);
    let out = beamsplit(&["verify", "hadamard", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "verdict: PASS\n");

    let bad = dir.path().join("bad.smat");
    std::fs::write(&bad, "H 2\n++\n++\n").unwrap();
    let out = beamsplit(&["verify", "hadamard", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "verdict: FAIL\n");

    let malformed = dir.path().join("m.smat");
    std::fs::write(&malformed, "H 2\n++\n+x\n").unwrap();
    assert_eq!(
        code(&beamsplit(&[
            "verify",
            "hadamard",
            malformed.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn verify_unbiased_accepts_the_identity_literal() {
    let dir = tempfile::tempdir().unwrap();
    let pmat = dir.path().join("f8.pmat");
    beamsplit(&[
        "gen",
        "schwinger",
        "--n",
        "8",
        "--out",
        pmat.to_str().unwrap(),
    ]);
    let out = beamsplit(&["verify", "unbiased", pmat.to_str().unwrap(), "identity"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("verdict: PASS\n"));

    // the standard basis is not unbiased to itself, and needs a dimension
    assert_eq!(
        code(&beamsplit(&["verify", "unbiased", "identity", "identity"])),
        2
    );
}

#[test]
fn sim_is_deterministic_and_validates_flags() {
    let a = beamsplit(&[
        "sim",
        "--model",
        "beamsplitter",
        "--n",
        "4",
        "--port",
        "1",
        "--bits",
        "256",
        "--seed",
        "9",
    ]);
    let b = beamsplit(&[
        "sim",
        "--model",
        "beamsplitter",
        "--n",
        "4",
        "--port",
        "1",
        "--bits",
        "256",
        "--seed",
        "9",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("# model=beamsplitter(n=4,port=1) seed=9 length=256\n"));

    assert_eq!(
        code(&beamsplit(&[
            "sim", "--model", "symmetry", "--bias", "1.5", "--bits", "8", "--seed", "0"
        ])),
        2
    );
    assert_eq!(
        code(&beamsplit(&[
            "sim", "--model", "symmetry", "--n", "4", "--bits", "8", "--seed", "0"
        ])),
        2
    );
    assert_eq!(
        code(&beamsplit(&[
            "sim",
            "--model",
            "beamsplitter",
            "--bias",
            "0.5",
            "--bits",
            "8",
            "--seed",
            "0"
        ])),
        2
    );
}

#[test]
fn extract_then_test_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.bits");
    let clean = dir.path().join("clean.bits");
    beamsplit(&[
        "sim",
        "--model",
        "emission",
        "--bias",
        "0.8",
        "--bits",
        "100000",
        "--seed",
        "5",
        "--out",
        raw.to_str().unwrap(),
    ]);
    let out = beamsplit(&[
        "extract",
        "vonneumann",
        raw.to_str().unwrap(),
        clean.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let reported: usize = stdout(&out)
        .trim()
        .strip_prefix("extracted: ")
        .unwrap()
        .parse()
        .unwrap();
    let written = std::fs::read_to_string(&clean).unwrap();
    let stream = beamsplit_core::BitStream::parse_text(&written).unwrap();
    assert_eq!(stream.len(), reported);
    assert!(written.starts_with("# model=vonneumann(emission(p=0.8)) seed=5"));

    assert_eq!(
        code(&beamsplit(&["test", "monobit", clean.to_str().unwrap()])),
        0
    );
}

#[test]
fn borel_fails_constant_streams_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = dir.path().join("zeros.bits");
    let line = "0".repeat(64);
    let mut text = String::new();
    for _ in 0..16 {
        text.push_str(&line);
        text.push('\n');
    }
    std::fs::write(&zeros, text).unwrap();
    let out = beamsplit(&["test", "borel", zeros.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("verdict: FAIL\n"));
}

#[test]
fn unknown_flags_and_subcommands_are_usage_errors() {
    assert_eq!(
        code(&beamsplit(&["search", "--order", "4", "--frobnicate"])),
        2
    );
    assert_eq!(code(&beamsplit(&["frobnicate"])), 2);
    assert_eq!(
        code(&beamsplit(&[
            "extract",
            "vonneumann",
            "/nonexistent/x",
            "/nonexistent/y"
        ])),
        2
    );
}

#[test]
fn explore_dita_is_byte_identical_across_runs() {
    let a = beamsplit(&["explore", "dita", "--n", "2"]);
    let b = beamsplit(&["explore", "dita", "--n", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("tested: 32\n"));
    assert_eq!(code(&beamsplit(&["explore", "dita", "--n", "3"])), 2);
}

#[test]
fn fixtures_dir_is_not_required_by_the_binary() {
    // sanity: the binary works from any cwd
    let out = Command::new(env!("CARGO_BIN_EXE_beamsplit"))
        .args(["gen", "sylvester", "--k", "0"])
        .current_dir(Path::new("/"))
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "H 1\n+\n");
}
