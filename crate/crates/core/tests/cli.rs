use std::path::PathBuf;
use std::process::Command;

use esurf::cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn esurf(args: &[&str]) -> Outcome {
    run(std::iter::once("esurf").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = esurf(&full);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

const J0_MODEL: &str = "A = 0\nB = t^5*(t-1)^2\n";

#[test]
fn classify_reports_places_and_degree() {
    let path = file("j0.model", J0_MODEL);
    let out = esurf(&["classify", &path]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("0 : II* "), "{}", out.stdout);
    assert!(out.stdout.contains("1 : IV "), "{}", out.stdout);
    assert!(out.stdout.contains("inf : II* "), "{}", out.stdout);
    assert!(out.stdout.contains("deg L = 2"), "{}", out.stdout);
    assert!(out.stdout.contains("sum_euler = 24"), "{}", out.stdout);
    assert!(out.stdout.contains(&format!("input-sha256: {}", hex(J0_MODEL.as_bytes()))));
}

#[test]
fn malformed_polynomial_is_a_usage_error_with_position() {
    let path = file("bad.model", "A = t**2\nB = 1\n");
    let out = esurf(&["classify", &path]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    assert!(out.stderr.contains("line 1: column 7"), "{}", out.stderr);
}

#[test]
fn zero_discriminant_is_a_domain_error() {
    let path = file("degenerate.model", "A = -3*t^2\nB = 2*t^3\n");
    let out = esurf(&["classify", &path]);
    assert_eq!(out.code, EXIT_DOMAIN, "{}", out.stdout);
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["frobnicate"],
        vec!["search", "--degree", "12"],
        vec!["search", "--degree", "12", "--over0", "3,,3", "--over1728", "2", "--overinf", "12"],
        vec!["torelli"],
        vec!["classify", "/nonexistent/esurf/input"],
    ] {
        assert_eq!(esurf(&args).code, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let out = esurf(&[flag]);
        assert_eq!(out.code, EXIT_OK);
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn noether_violation_is_a_domain_error() {
    let path = file("odd.conf", "genus = 0\nP : I5\n");
    assert_eq!(esurf(&["analyze", &path]).code, EXIT_DOMAIN);
    let path = file("garbled.conf", "genus = 0\nP ; I12\n");
    assert_eq!(esurf(&["analyze", &path]).code, EXIT_USAGE);
}

#[test]
fn analyze_verdicts() {
    let path = file("i1i11.conf", "genus = 1\nP : I1\nQ : I11\n");
    let v = json(&["analyze", &path]);
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["verdict"]["delta"], 0);
    assert_eq!(v["verdict"]["extremality"]["verdict"], "extremal");
    let text = esurf(&["analyze", &path]).stdout;
    assert!(text.contains("delta = 0, extremal (non-constant j)"), "{text}");
    // over the line the same fibers would need a negative delta
    let path = file("i1i11-g0.conf", "genus = 0\nP : I1\nQ : I11\n");
    let v = json(&["analyze", &path]);
    assert_eq!(v["verdict"]["delta"], -2);
    assert_eq!(v["verdict"]["extremality"]["verdict"], "out-of-scope");
}

#[test]
fn twist_and_minimal_twists() {
    let path = file("twist.conf", "genus = 0\nP : II*\nQ : II\n");
    let out = esurf(&["twist", &path, "--sites", "P,Q"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("P : IV") && out.stdout.contains("Q : IV*"), "{}", out.stdout);
    assert_eq!(esurf(&["twist", &path, "--sites", "P"]).code, EXIT_DOMAIN);
    assert_eq!(esurf(&["star-minimal", &path]).code, EXIT_OK);
    // constant j has no minimal-delta twist
    assert_eq!(esurf(&["min-twist", &path]).code, EXIT_DOMAIN);
}

#[test]
fn basechange_pulls_back() {
    let path = file("bc.conf", "genus = 0\nP : II*\nQ : II\n");
    let out = esurf(&["basechange", &path, "--degree", "2", "--at", "P=2", "--at", "Q=2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("P : IV*"), "{}", out.stdout);
    assert!(out.stdout.contains("Q : IV"), "{}", out.stdout);
    let bad = esurf(&["basechange", &path, "--degree", "2", "--at", "P=3"]);
    assert_eq!(bad.code, EXIT_DOMAIN);
}

#[test]
fn torelli_truth_table() {
    let fails = esurf(&["torelli", "--pg", "2", "--constant-j", "--extremal"]);
    assert!(fails.stdout.contains("FAILS infinitesimal Torelli"));
    let ok = esurf(&["torelli", "--pg", "2", "--extremal"]);
    assert!(ok.stdout.contains("satisfies infinitesimal Torelli"));
    let k3 = esurf(&["torelli", "--pg", "1", "--constant-j", "--extremal"]);
    assert!(k3.stdout.contains("out of scope"));
    assert_eq!(esurf(&["torelli", "--pg", "-1"]).code, EXIT_OK);
}

const SEARCH: [&str; 9] = [
    "search", "--degree", "12", "--over0", "3,3,3,3", "--over1728", "2,2,2,2,2,2", "--overinf", "11,1",
];

#[test]
fn search_prints_a_witness() {
    let out = esurf(&SEARCH);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("sigma0 = ("), "{}", out.stdout);
    assert!(out.stdout.contains("sigma1 = ("), "{}", out.stdout);
}

#[test]
fn search_reports_nonexistence() {
    let out = esurf(&[
        "search", "--degree", "12", "--over0", "3,3,3,3", "--over1728", "2,2,2,2,2,2", "--overinf", "7,5",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("NONEXISTENT"));
    assert!(out.stdout.contains("scanned = 10395 of 10395"), "{}", out.stdout);
}

#[test]
fn search_rejects_inconsistent_partitions() {
    let out = esurf(&[
        "search", "--degree", "12", "--over0", "3,3,3", "--over1728", "2,2,2,2,2,2", "--overinf", "11,1",
    ]);
    assert_eq!(out.code, EXIT_DOMAIN);
    let out = esurf(&[
        "search", "--degree", "40", "--over0", "40", "--over1728", "40", "--overinf", "40",
    ]);
    assert_eq!(out.code, EXIT_DOMAIN);
}

#[test]
fn output_is_identical_across_runs_and_workers() {
    let first = esurf(&SEARCH);
    let mut args = SEARCH.to_vec();
    args.extend(["--workers", "4"]);
    let parallel = esurf(&args);
    assert_eq!(esurf(&SEARCH), first);
    // only the echoed command and its digest differ
    let strip = |s: &str| s.lines().skip(2).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&parallel.stdout), strip(&first.stdout));
}

#[test]
fn survey_summary() {
    let out = esurf(&["survey", "--degree", "12", "--workers", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("partitions = 76"), "{}", out.stdout);
    assert!(out.stdout.contains("realizable = 11"), "{}", out.stdout);
    assert!(out.stdout.contains("two-part nonexistent = 7,5"), "{}", out.stdout);
}

#[test]
fn tables_all_pass() {
    let out = esurf(&["tables"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("15/15 rows pass"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn json_documents_have_the_report_fields() {
    let path = file("json.model", J0_MODEL);
    for args in [vec!["classify", path.as_str()], vec!["tables"], SEARCH.to_vec()] {
        let v = json(&args);
        for key in ["command", "input_sha256", "results", "verdict", "exit_code"] {
            assert!(v.get(key).is_some(), "{key} missing for {args:?}");
        }
    }
    let err = json(&["classify", &file("json-bad.model", "A = (\nB = 1\n")]);
    assert_eq!(err["exit_code"], 64);
    assert!(err["error"].as_str().unwrap().contains("line 1"));
}

#[test]
fn binary_exit_codes_match() {
    let bin = env!("CARGO_BIN_EXE_esurf");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["tables"]), Some(EXIT_OK));
    assert_eq!(status(&["nope"]), Some(EXIT_USAGE));
    let path = file("bin-degenerate.model", "A = 0\nB = 0\n");
    assert_eq!(status(&["classify", &path]), Some(EXIT_DOMAIN));
}

#[test]
fn stdin_input_is_digested() {
    use std::io::Write;
    let bin = env!("CARGO_BIN_EXE_esurf");
    let mut child = Command::new(bin)
        .args(["classify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(J0_MODEL.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(&hex(J0_MODEL.as_bytes())), "{text}");
}
