use std::path::PathBuf;

use prk_lab::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).to_string_lossy().into_owned()
}

fn records(stdout: &str) -> Vec<serde_json::Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn check_reports_the_type_of_lemp() {
    let out = run(["prk", "check", &example("lemp.prk")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "lemp : (a ∨ ¬a)⊕\n");
}

#[test]
fn prj_rejects_lemp() {
    let out = run(["prk", "check", "--system", "prj", &example("lemp.prk")]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stdout.contains("rejected by prj"));
}

#[test]
fn prjv_with_counterfactual_rejects_its_use() {
    let src = std::env::temp_dir().join("prk-cli-prjv.prk");
    std::fs::write(&src, "term t [x : a ?-] : a ?- = x\n").unwrap();
    let path = src.to_string_lossy().into_owned();
    assert_eq!(run(["prk", "check", "--system", "prjv", &path]).code, EXIT_OK);
    assert_eq!(run(["prk", "check", "--system", "prjv", "--counterfactuals", "x", &path]).code, EXIT_FAILURE);
}

#[test]
fn declaration_selection() {
    let out = run(["prk", "check", &format!("{}#ident", example("witness.prk"))]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 1);
    let out = run(["prk", "check", &format!("{}#missing", example("witness.prk"))]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn witness_reports_the_injection() {
    let out = run(["prk", "--json", "witness", &format!("{}#lemp", example("witness.prk"))]);
    assert_eq!(out.code, EXIT_OK);
    let r = &records(&out.stdout)[0];
    assert_eq!(r["payload"]["injection"], 2);
    assert_eq!(r["payload"]["head"], "inj2+");
    let out = run(["prk", "--json", "witness", &format!("{}#ident", example("witness.prk"))]);
    assert_eq!(records(&out.stdout)[0]["payload"]["packed_type"], "a");
}

#[test]
fn witness_needs_a_closed_term() {
    let out = run(["prk", "witness", &example("exfalso.prk")]);
    assert_eq!(out.code, EXIT_FAILURE);
}

#[test]
fn canon_of_top_is_a_weak_abstraction() {
    let out = run(["prk", "--json", "canon", &example("top.prk")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(records(&out.stdout)[0]["payload"]["head"], "wlam+");
}

#[test]
fn json_records_have_stable_fields() {
    let a = run(["prk", "--json", "normalize", "--strategy", "random", "--seed", "3", &example("reduction.prk")]);
    let b = run(["prk", "--json", "normalize", "--strategy", "random:3", &example("reduction.prk")]);
    assert_eq!(a, b);
    for r in records(&a.stdout) {
        let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "input_hash", "ok", "payload"]);
    }
}

#[test]
fn fuel_exhaustion_exits_one() {
    let out = run(["prk", "normalize", "--fuel", "2", &example("reduction.prk")]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stdout.contains("fuel-exhausted"));
}

#[test]
fn erase_prints_the_untyped_term() {
    let out = run(["prk", "erase", "--normalize", &example("reduction.prk")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("4 steps: ℧((t s), (s t))\n"), "{}", out.stdout);
}

#[test]
fn embed_rejects_excluded_middle_in_nj() {
    let target = format!("{}#dne", example("nk.prk"));
    assert_eq!(run(["prk", "embed", "--logic", "nk", &target]).code, EXIT_OK);
    assert_eq!(run(["prk", "embed", "--logic", "nj", &target]).code, EXIT_FAILURE);
    let term = format!("{}#lemp", example("witness.prk"));
    assert_eq!(run(["prk", "embed", "--logic", "nk", &term]).code, EXIT_USAGE);
}

#[test]
fn encode_stuck_is_success() {
    let out = run(["prk", "encode", "--connective", "and", "--sign", "-"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("verdict: stuck"));
    let out = run(["prk", "encode", "--connective", "or", "--sign", "+"]);
    assert!(out.stdout.contains("verdict: simulates"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(["prk", "frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(["prk", "encode", "--connective", "imp", "--sign", "+"]).code, EXIT_USAGE);
    assert_eq!(run(["prk", "check", "/nonexistent/file.prk"]).code, EXIT_USAGE);
    let src = std::env::temp_dir().join("prk-cli-bad.prk");
    std::fs::write(&src, "term t = wlam+ (x : a ?-\n").unwrap();
    let out = run(["prk", "check", &src.to_string_lossy()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.starts_with("prk: "), "{}", out.stderr);
}

#[test]
fn quick_selftest_passes() {
    let out = run(["prk", "selftest", "--quick", "--suite", "golden", "--suite", "embedding"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.contains(" ok ")).count(), 2);
}
