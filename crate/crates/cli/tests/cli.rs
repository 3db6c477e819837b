//! End-to-end tests of the `kn-polar` binary: JSON output shapes, text mode,
//! exit codes, and round-trip of emitted reports.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use kn_polar::json;

const BIN: &str = env!("CARGO_BIN_EXE_kn-polar");

fn write_file(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dense_edges_kn2_counts_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write_file(dir.path(), "arr.json", r#"{"schema":"kn-polar/1","kind":"kn","N":2}"#);
    let out = run(&["dense-edges", "--arrangement", arr.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: json::DenseEdgesReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.schema, "kn-polar/1");
    assert_eq!(report.counts.affine, 7);
    assert_eq!(report.counts.infinity, 3);
    // Round-trip: re-serializing parses back to an equal value.
    let again: json::DenseEdgesReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);

    let text = run(&["dense-edges", "--arrangement", arr.to_str().unwrap()]);
    assert!(stdout(&text).contains("counts: 7 affine + 3 infinity = 10"));
}

#[test]
fn dense_edges_kn3_counts() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write_file(dir.path(), "arr.json", r#"{"schema":"kn-polar/1","kind":"kn","N":3}"#);
    let out = run(&["dense-edges", "--arrangement", arr.to_str().unwrap(), "--format", "json"]);
    let report: json::DenseEdgesReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report.counts.affine, report.counts.infinity), (18, 7));
}

#[test]
fn dense_edges_single_general_hyperplane() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write_file(
        dir.path(),
        "arr.json",
        r#"{"schema":"kn-polar/1","kind":"general","N":2,
            "hyperplanes":[{"coeffs":["1","0"],"const":"0","label":"s1"}]}"#,
    );
    let out = run(&["dense-edges", "--arrangement", arr.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: json::DenseEdgesReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.counts.total, 1);
    assert_eq!(report.affine[0].containing, vec!["s1"]);
}

#[test]
fn conditions_kn2_has_ten_entries() {
    let out = run(&["conditions", "--N", "2", "--format", "json"]);
    assert!(out.status.success());
    let report: json::ConditionsReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.conditions.len(), 10);
    let again: json::ConditionsReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn polar_simplex_round_trips_and_i0_filters() {
    let dir = tempfile::tempdir().unwrap();
    let domain = write_file(
        dir.path(),
        "d.json",
        r#"{"schema":"kn-polar/1","kind":"kn-atoms","atoms":[
            {"type":"ge0","i":1},{"type":"ge","i":2,"j":1},{"type":"le1","i":2}]}"#,
    );
    let out =
        run(&["polar", "--N", "2", "--domain", domain.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: json::PolarReportOut = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.records.len(), 10);
    assert_eq!(report.records.iter().filter(|r| r.contributes).count(), 5);
    assert!(report.gamma_factors.contains(&"Γ(s01+s02+s12+2)".to_string()));
    let again: json::PolarReportOut =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);

    let cube = write_file(
        dir.path(),
        "cube.json",
        r#"{"schema":"kn-polar/1","kind":"kn-atoms","atoms":[
            {"type":"ge0","i":1},{"type":"le1","i":1},{"type":"ge0","i":2},{"type":"le1","i":2}]}"#,
    );
    let filtered = run(&[
        "polar", "--N", "2", "--domain", cube.to_str().unwrap(), "--i0", "--format", "json",
    ]);
    let report: json::PolarReportOut = serde_json::from_str(&stdout(&filtered)).unwrap();
    // The {s12} record is supported on a diagonal variable only.
    assert_eq!(report.records.len(), 9);
    assert!(report.records.iter().all(|r| r.condition.support != vec!["s12".to_string()]));
}

#[test]
fn witness_all_and_single() {
    let out = run(&["witness", "--N", "2", "--all", "--format", "json"]);
    assert!(out.status.success());
    let report: json::WitnessReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.witnesses.len(), 10);
    assert!(report.witnesses.iter().all(|w| w.verified));

    let single = run(&["witness", "--N", "2", "--condition", "6", "--format", "json"]);
    let report: json::WitnessReport = serde_json::from_str(&stdout(&single)).unwrap();
    assert_eq!(report.witnesses.len(), 1);
    assert_eq!(report.witnesses[0].target.support, vec!["s01"]);
    assert_eq!(report.witnesses[0].assignment["s01"], "-1");
    assert_eq!(report.witnesses[0].assignment["s02"], "-3/8");
}

#[test]
fn eval_reports_estimate_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let domain = write_file(
        dir.path(),
        "cube.json",
        r#"{"schema":"kn-polar/1","kind":"kn-atoms","atoms":[
            {"type":"ge0","i":1},{"type":"le1","i":1}]}"#,
    );
    let params = write_file(
        dir.path(),
        "p.json",
        r#"{"schema":"kn-polar/1","params":{"s01":1.0,"s12":2.0}}"#,
    );
    let out = run(&[
        "eval", "--N", "1", "--domain", domain.to_str().unwrap(), "--params",
        params.to_str().unwrap(), "--samples", "50000", "--seed", "9", "--format", "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let r: kn_polar::numerics::EvalResult = serde_json::from_str(&stdout(&out)).unwrap();
    // B(2, 3) = 1/12.
    assert!((r.estimate - 1.0 / 12.0).abs() < 1e-3, "{r:?}");
    assert_eq!(r.seed, 9);
    assert_eq!(r.samples, 50000);
}

#[test]
fn exit_codes_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.json", r#"{"schema":"kn-polar/1","kind":"nope"}"#);
    let out = run(&["polar", "--N", "2", "--domain", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let degen = write_file(
        dir.path(),
        "degen.json",
        r#"{"schema":"kn-polar/1","kind":"general",
            "inequalities":[{"coeffs":["1","-1"],"const":"0"}],
            "equalities":[{"coeffs":["1","-1"],"const":"0"}]}"#,
    );
    let out = run(&["polar", "--N", "2", "--domain", degen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let half = write_file(
        dir.path(),
        "half.json",
        r#"{"schema":"kn-polar/1","kind":"general",
            "inequalities":[{"coeffs":["1","0"],"const":"0"}]}"#,
    );
    let out = run(&["polar", "--N", "2", "--domain", half.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let cube = write_file(
        dir.path(),
        "cube.json",
        r#"{"schema":"kn-polar/1","kind":"kn-atoms","atoms":[
            {"type":"ge0","i":1},{"type":"le1","i":1}]}"#,
    );
    let boundary = write_file(
        dir.path(),
        "bp.json",
        r#"{"schema":"kn-polar/1","params":{"s01":-1.0,"s12":0.0}}"#,
    );
    let out = run(&[
        "eval", "--N", "1", "--domain", cube.to_str().unwrap(), "--params",
        boundary.to_str().unwrap(), "--samples", "1000",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("Re(s01) > -1"), "{err}");
}

#[test]
fn json_mode_stdout_is_pure_json() {
    let out = run(&["conditions", "--N", "3", "--format", "json"]);
    let body = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["schema"], "kn-polar/1");
    assert_eq!(value["conditions"].as_array().unwrap().len(), 25);
}
