use std::process::{Command, Output};

use serde_json::Value;

fn orbispec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbispec"))
        .args(args)
        .env("ORBISPEC_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_schema_valid(report: &Value) {
    let schema: Value = serde_json::from_str(orbispec::report::REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(report) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "report violates schema: {msgs:?}");
}

fn json_report(args: &[&str]) -> (Output, Value) {
    let out = orbispec(args);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("json report on stdout");
    assert_schema_valid(&report);
    (out, report)
}

fn verdicts(report: &Value) -> Vec<(String, String)> {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["check"].as_str().unwrap().to_string(),
                r["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn verify_algebra_passes_for_quarter() {
    let (out, report) = json_report(&[
        "verify-algebra",
        "--t",
        "1/4",
        "--trials",
        "200",
        "--bound",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(report["command"], "verify-algebra");
    assert!(verdicts(&report).iter().all(|(_, v)| v != "fail"));
}

#[test]
fn verify_algebra_handles_trivial_and_shifted_parameters() {
    for t in ["0", "5/4", "-0.75"] {
        let (out, report) = json_report(&[
            "verify-algebra",
            "--t",
            t,
            "--trials",
            "50",
            "--bound",
            "1",
            "--format",
            "json",
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "t = {t}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if t == "0" {
            let not_inner = verdicts(&report)
                .into_iter()
                .find(|(c, _)| c.contains("not_inner"));
            assert_eq!(not_inner.map(|(_, v)| v), Some("recorded".to_string()));
        }
    }
}

#[test]
fn verify_algebra_text_summary() {
    let out = orbispec(&[
        "verify-algebra",
        "--t",
        "1/3",
        "--trials",
        "20",
        "--bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out) + &String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn singular_set_report() {
    for bound in ["1", "2"] {
        let (out, report) = json_report(&["singular-set", "--bound", bound, "--format", "json"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(report["command"], "singular-set");
        assert!(verdicts(&report).iter().any(|(_, v)| v == "recorded"));
    }
}

#[test]
fn spectrum_even_rows() {
    let dir = tempfile::tempdir().unwrap();
    let heat = dir.path().join("heat.csv");
    let out = orbispec(&[
        "spectrum",
        "--t",
        "0",
        "--grid",
        "6",
        "--eigs",
        "20",
        "--parity",
        "even",
        "--tau",
        "0.05,0.1",
        "--heat-output",
        heat.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,N,parity,index,eigenvalue"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.starts_with("0,6,even,")));
    let heat = std::fs::read_to_string(heat).unwrap();
    assert_eq!(heat.lines().count(), 3);
}

#[test]
fn spectrum_calibration_and_dense() {
    let (out, report) =
        json_report(&["spectrum", "--grid", "4", "--calibrate", "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(verdicts(&report)
        .iter()
        .any(|(c, v)| c.contains("calibration") && v == "pass"));

    let out = orbispec(&["spectrum", "--t", "0.25", "--grid", "4", "--dense"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout(&out).lines().count(), 4097);
}

#[test]
fn compare_with_itself_has_zero_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "compare",
        "--t",
        "0.25,0.25",
        "--grid",
        "4,6",
        "--eigs",
        "10",
        "--cache-dir",
        cache,
        "--format",
        "json",
    ];
    let (out, report) = json_report(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let tables = report["tables"]["deformed_gaps"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    for level in tables {
        for row in level[0]["rows"].as_array().unwrap() {
            assert_eq!(row["relative_gap"].as_f64(), Some(0.0));
        }
    }
    assert!(verdicts(&report)
        .iter()
        .any(|(c, v)| c.starts_with("deformed_refinement") && v == "pass"));

    // a second run reads the cached operators and prints the same spectra
    let csv_args = [
        "compare",
        "--t",
        "0.25,0.25",
        "--grid",
        "4,6",
        "--eigs",
        "10",
        "--cache-dir",
        cache,
    ];
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
    let first = orbispec(&csv_args);
    let second = orbispec(&csv_args);
    assert_eq!(stdout(&first).lines().count(), 41);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["spectrum", "--t", "0", "--grid", "5"],
        vec!["spectrum", "--t", "0", "--grid", "2"],
        vec!["compare", "--t", "0,0.25", "--grid", "7"],
        vec!["verify-algebra", "--t", "1/0"],
    ] {
        let out = orbispec(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
