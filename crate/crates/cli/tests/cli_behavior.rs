//! Exit-code vocabulary, report schema conformance and determinism of the
//! command-line surface.

use std::path::Path;
use std::process::Output;

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ramsey-stepup")
}

fn run(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = run_raw(dir, args);
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 stdout");
    let report: Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("stdout is not a report ({e}); args {args:?}"));
    (code, report)
}

fn run_raw(dir: &Path, args: &[&str]) -> Output {
    std::process::Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-v1.schema.json"),
    )
    .expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).expect("schema json"))
        .expect("valid schema")
}

fn assert_schema(report: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator
        .iter_errors(report)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}\nreport: {report:#}");
}

/// Outcome and parameter echo with the volatile parts removed.
fn deterministic_view(report: &Value) -> Value {
    let mut v = report.clone();
    let manifest = v["manifest"].as_object_mut().unwrap();
    manifest.remove("started_at");
    manifest.remove("finished_at");
    v.as_object_mut().unwrap().remove("diagnostics");
    v
}

#[test]
fn search_writes_phi_and_validates_against_schema() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(
        dir.path(),
        &["search", "--profile", "lemma31", "--n", "5", "--N", "7", "--seed", "12345", "--max-attempts", "100000"],
    );
    assert_eq!(code, 0);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "found");
    // default output path lands in the working directory
    let phi_text = std::fs::read_to_string(dir.path().join("out.phi")).unwrap();
    assert_eq!(report["outcome"]["phi_file"].as_str().unwrap(), phi_text);
    let phi = ramsey_stepup::phi::parse_str(&phi_text).unwrap();
    assert_eq!(phi.n_points(), 7);
}

#[test]
fn search_exhaustion_exits_3_with_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(
        dir.path(),
        &["search", "--profile", "lemma31", "--n", "2", "--N", "4", "--seed", "1", "--max-attempts", "65536"],
    );
    assert_eq!(code, 3);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "exhausted");
    let histogram = report["outcome"]["failure_histogram"].as_array().unwrap();
    let all_good = histogram
        .iter()
        .find(|h| h["clause"] == "no_all_good_set")
        .expect("all-good clause in histogram");
    assert_eq!(all_good["count"], 65536);
}

#[test]
fn invalid_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["search", "--profile", "lemma31", "--n", "0", "--N", "4"] as &[&str],
        &["search", "--profile", "lemma41", "--n", "3", "--N", "8"],
        &["search", "--profile", "lemma31", "--n", "2", "--N", "4", "--max-attempts", "0"],
        &["search", "--profile", "lemma31", "--n", "2", "--N", "4", "--red-probability", "3/2"],
        &["tower", "--phi", "x.phi", "--top-arity", "4", "--profile4", "r45", "--sample-bits", "4"],
        &["oracle", "--s", "3", "--n", "3"],
    ] {
        let out = run_raw(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn unreadable_or_corrupt_phi_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_raw(dir.path(), &["verify", "--profile", "r46", "--phi", "missing.phi", "--ground-bits", "4"]);
    assert_eq!(out.status.code(), Some(4));

    std::fs::write(dir.path().join("bad.phi"), "PHI v2\nN=3\ne0\n").unwrap();
    let out = run_raw(dir.path(), &["verify", "--profile", "r46", "--phi", "bad.phi", "--ground-bits", "4"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_clean_run_and_forced_falsifier() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("phi.phi"), "PHI v1\nN=6\n6b2c\n").unwrap();
    let (code, report) = run(
        dir.path(),
        &["verify", "--profile", "r46", "--phi", "phi.phi", "--ground-bits", "6"],
    );
    assert_eq!(code, 0);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "none_exhaustive");

    // Forcing a red target the lifting does not exclude shows the witness
    // path: red 4-sets exist (single red tuples), so exit 5.
    let (code, report) = run(
        dir.path(),
        &["verify", "--profile", "r46", "--phi", "phi.phi", "--ground-bits", "6", "--red-target", "4"],
    );
    assert_eq!(code, 5);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "witness_found");
    let ground0 = &report["outcome"]["grounds"][0]["outcome"];
    assert_eq!(ground0["kind"], "witness");
    assert_eq!(ground0["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_paths_validate() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(dir.path(), &["oracle", "--s", "3", "--n", "3", "--N-max", "8"]);
    assert_eq!(code, 0);
    assert_schema(&report);
    assert_eq!(report["outcome"]["value"], 6);

    let (code, report) = run(dir.path(), &["oracle", "--s", "3", "--n", "3", "--N-max", "4"]);
    assert_eq!(code, 3);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "unresolved");
    // the avoiding coloring re-parses
    let phi_file = report["outcome"]["avoiding_coloring"]["phi_file"].as_str().unwrap();
    let phi = ramsey_stepup::phi::parse_str(phi_file).unwrap();
    assert_eq!(phi.n_points(), 4);
}

#[test]
fn tower_too_large_exits_6() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("n5.phi"), "PHI v1\nN=5\n1ac0\n").unwrap();
    let (code, report) = run(
        dir.path(),
        &["tower", "--phi", "n5.phi", "--top-arity", "7", "--profile4", "r45", "--sample-bits", "8"],
    );
    assert_eq!(code, 6);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "ground_too_large");
}

#[test]
fn probe_reports_schema_valid_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("phi.phi"), "PHI v1\nN=6\n6b2c\n").unwrap();
    let (code, report) = run(
        dir.path(),
        &["probe", "--profile", "r46", "--phi", "phi.phi", "--ground-bits", "5", "--restarts", "20", "--seed", "9"],
    );
    assert_eq!(code, 0);
    assert_schema(&report);
    assert_eq!(report["outcome"]["status"], "lower_bound");
    assert!(report["outcome"]["size"].as_u64().unwrap() >= 4);
}

#[test]
fn repeated_runs_are_byte_identical_outside_volatile_fields() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let args = &["search", "--profile", "lemma31", "--n", "4", "--N", "6", "--seed", "99", "--max-attempts", "5000"];
    let (code_a, rep_a) = run(dir_a.path(), args);
    let (code_b, rep_b) = run(dir_b.path(), args);
    assert_eq!(code_a, code_b);
    assert_eq!(deterministic_view(&rep_a), deterministic_view(&rep_b));
    let phi_a = std::fs::read(dir_a.path().join("out.phi")).unwrap();
    let phi_b = std::fs::read(dir_b.path().join("out.phi")).unwrap();
    assert_eq!(phi_a, phi_b);
}

#[test]
fn thread_count_does_not_change_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("phi.phi"), "PHI v1\nN=6\n6b2c\n").unwrap();
    let base = &["verify", "--profile", "r45", "--phi", "phi.phi", "--ground-bits", "6"];
    let (c1, r1) = run(dir.path(), &[base, &["--threads", "1"] as &[&str]].concat());
    let (c2, r2) = run(dir.path(), &[base, &["--threads", "2"]].concat());
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(r1["outcome"], r2["outcome"]);

    // a query with many witnesses must pick the same one at any thread count
    let forced = &["verify", "--profile", "r45", "--phi", "phi.phi", "--ground-bits", "6", "--red-target", "4"];
    let (c1, r1) = run(dir.path(), &[forced, &["--threads", "1"] as &[&str]].concat());
    let (c2, r2) = run(dir.path(), &[forced, &["--threads", "2"]].concat());
    assert_eq!(c1, 5);
    assert_eq!(c2, 5);
    assert_eq!(r1["outcome"], r2["outcome"]);
}

#[test]
fn report_flag_duplicates_stdout_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_raw(
        dir.path(),
        &["oracle", "--s", "3", "--n", "3", "--N-max", "6", "--report", "report.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let file = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert_eq!(file, format!("{}\n", stdout.trim_end()));
}
