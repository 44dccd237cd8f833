//! Every document in `docs/corpus` must parse and validate, and a fixed
//! set of command invocations must reproduce the committed outputs in
//! `docs/corpus/expected` byte for byte.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .args(args)
        .current_dir(corpus_dir())
        .output()
        .expect("binary runs")
}

#[test]
fn every_corpus_document_validates() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus_dir()).expect("corpus directory exists") {
        let path = entry.expect("entry").path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        seen += 1;
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let out = run(&["validate", &name]);
        assert!(
            out.status.success(),
            "{name} failed to validate: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(seen >= 8, "corpus unexpectedly small: {seen} documents");
}

#[test]
fn corpus_lie_documents_round_trip() {
    for entry in std::fs::read_dir(corpus_dir()).expect("corpus directory exists") {
        let path = entry.expect("entry").path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let doc = lieforge_cli::doc::read_document(&path, false).expect("parses");
        if let lieforge_cli::doc::Document::Lie(alg) = doc {
            let text = lieforge_cli::doc::to_document_string(&lieforge_cli::doc::serialize_lie(&alg));
            let reparsed =
                lieforge_cli::doc::parse_document(&text, &corpus_dir(), false).expect("reparses");
            match reparsed {
                lieforge_cli::doc::Document::Lie(back) => assert_eq!(back, alg),
                other => panic!("round trip changed kind to {:?}", other.kind()),
            }
        }
    }
}

#[test]
fn commands_reproduce_committed_outputs() {
    let manifest: &[(&[&str], &str, i32)] = &[
        (&["validate", "heis5.json"], "validate_heis5.txt", 0),
        (
            &["validate", "dual_numbers.json"],
            "validate_dual_numbers.txt",
            0,
        ),
        (
            &["validate", "rep_zero_f2.json"],
            "validate_rep_zero_f2.txt",
            0,
        ),
        (
            &["validate", "suite_eps_heis2.json"],
            "validate_suite_eps_heis2.txt",
            0,
        ),
        (&["validate", "ab4_f2.json"], "validate_ab4_f2.txt", 0),
        (
            &["cohomology", "heis5.json", "--q", "2", "--grade", "0"],
            "cohomology_heis5_q2_g0.txt",
            0,
        ),
        (
            &["cohomology", "heis5.json", "--q", "1", "--grade", "0"],
            "cohomology_heis5_q1_g0.txt",
            0,
        ),
        (
            &["cohomology", "ab21.json", "--q", "2", "--grade", "0"],
            "cohomology_ab21_q2_g0.txt",
            0,
        ),
        (
            &["harrison", "dual_numbers.json", "--i", "1"],
            "harrison_dual_i1.txt",
            0,
        ),
        (
            &["harrison", "dual_numbers.json", "--i", "2"],
            "harrison_dual_i2.txt",
            0,
        ),
        (
            &["free", "--gens", "x:1,y:1", "--degree", "3"],
            "free_xy_d3.txt",
            0,
        ),
        (&["eta", "ab21.json"], "eta_ab21.txt", 0),
        (&["obstruct", "ab21.json"], "obstruct_ab21.txt", 0),
        (&["obstruct", "ab4_f2.json"], "obstruct_ab4_f2.txt", 1),
        (&["extend", "ab21.json"], "extend_ab21.txt", 0),
        (
            &["tower", "ab21.json", "--stages", "4"],
            "tower_ab21_s4.txt",
            0,
        ),
        (
            &["tower", "heis5.json", "--stages", "3"],
            "tower_heis5_s3.txt",
            0,
        ),
        (
            &["rep-tangent", "--map", "rep_zero_f2.json"],
            "rep_tangent_zero.txt",
            0,
        ),
        (
            &["rep-lift", "--map", "rep_zero_f2.json", "--base", "t3"],
            "rep_lift_zero_t3.txt",
            0,
        ),
        (
            &["rep-enumerate", "--map", "rep_zero_f2.json", "--base", "t2"],
            "rep_enumerate_zero_t2.txt",
            0,
        ),
        (
            &["rep-enumerate", "--map", "rep_zero_f2.json", "--base", "t3"],
            "rep_enumerate_zero_t3.txt",
            0,
        ),
        (
            &["quadratic", "--rep", "rep_zero_f2.json"],
            "quadratic_rep_zero.txt",
            0,
        ),
        (
            &["quadratic", "--lie", "ab21.json"],
            "quadratic_lie_ab21.txt",
            0,
        ),
        (
            &["schlessinger", "--suite", "suite_eps_heis2.json"],
            "schlessinger_eps.txt",
            0,
        ),
        (
            &["schlessinger", "--suite", "suite_quot_heis2.json"],
            "schlessinger_quot.txt",
            0,
        ),
        (
            &["cohomology", "heis5.json", "--q", "2", "--grade", "0", "--json"],
            "cohomology_heis5_q2_g0_json.txt",
            0,
        ),
    ];
    for (args, expected_file, expected_code) in manifest {
        let expected = std::fs::read(corpus_dir().join("expected").join(expected_file))
            .unwrap_or_else(|e| panic!("missing expected output {expected_file}: {e}"));
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(*expected_code),
            "exit code mismatch for {args:?}: stderr {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(
            out.stdout,
            expected,
            "output mismatch for {args:?}:\n--- got ---\n{}\n--- want ---\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&expected)
        );
    }
}

#[test]
fn parse_failures_use_exit_code_two_and_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind":"lie","ring":{"l":5,"N":1},"degrees":[2,1],
           "brackets":[{"left":[1,0],"right":[1,1],"value":[[0,1]]},
                       {"left":[1,1],"right":[1,0],"value":[[0,1]]}]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .arg("validate")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("antisymmetry"), "stderr: {stderr}");
    assert!(stderr.contains("entry 1") && stderr.contains("entry 0"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .env("LIEFORGE_THREADS", "zero")
        .args(["validate", "heis5.json"])
        .current_dir(corpus_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LIEFORGE_THREADS"));
}

#[test]
fn free_writes_a_document_that_validates() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("f.json");
    let out = Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .args(["free", "--gens", "x:1,y:1", "--degree", "3", "-o"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let check = Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .arg("validate")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(check.status.code(), Some(0));
    let text = String::from_utf8(check.stdout).unwrap();
    assert!(text.contains("ranks 2,1,2"), "got: {text}");
}
