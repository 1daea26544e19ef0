//! End-to-end tests for the `qcc` binary: replayability, exit codes,
//! and output formats.

use std::process::{Command, Output};

fn qcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exact_json_replays_byte_identically() {
    let args = ["exact", "--gamma", "0.7923", "--format", "json"];
    let first = qcc(&args);
    let second = qcc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["command"], "exact");
    assert!((v["results"]["i3"].as_f64().unwrap() - 2.914854).abs() < 1e-4);
}

#[test]
fn simulate_same_seed_is_byte_identical() {
    let args = [
        "simulate", "--rounds", "20000", "--seed", "42", "--format", "json",
    ];
    let first = qcc(&args);
    let second = qcc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let report = v["report"].as_object().unwrap();
    let mut keys: Vec<&String> = report.keys().collect();
    keys.sort();
    assert_eq!(
        keys,
        ["delta_hat", "n_rounds", "p_f1_hat", "p_f2_hat", "se_f1", "se_f2", "seed"]
    );
}

#[test]
fn simulate_different_seed_differs() {
    let a = qcc(&["simulate", "--rounds", "20000", "--seed", "1", "--format", "json"]);
    let b = qcc(&["simulate", "--rounds", "20000", "--seed", "2", "--format", "json"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn classical_scan_csv_has_81_rows() {
    let out = qcc(&["classical-scan", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 82);
    assert_eq!(lines[0], "a0,a1,b0,b1,hits_f1,hits_f2,delta,p_f1");
}

#[test]
fn optimize_fixed_seed_replays() {
    let args = [
        "optimize", "--gamma", "1.0", "--restarts", "4", "--seed", "9", "--format", "json",
    ];
    let first = qcc(&args);
    let second = qcc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn invalid_gamma_exits_2() {
    let out = qcc(&["exact", "--gamma=-0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_settings_file_exits_2() {
    let out = qcc(&["exact", "--gamma", "1.0", "--settings", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn injected_double_send_exits_3() {
    let out = qcc(&["simulate", "--rounds", "10", "--inject-double-send"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("second send"));
}

#[test]
fn unwritable_out_path_exits_4() {
    let out = qcc(&["exact", "--gamma", "1.0", "--out", "/no/such/dir/report.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn custom_settings_file_round_trips() {
    let dir = std::env::temp_dir().join("qcc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("settings.json");

    // Dump the standard settings, edit nothing, and feed them back in.
    let reference = qcc(&["exact", "--gamma", "1.0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&reference)).unwrap();
    std::fs::write(&path, serde_json::to_string(&v["config"]["settings"]).unwrap()).unwrap();

    let replay = qcc(&[
        "exact", "--gamma", "1.0", "--settings", path.to_str().unwrap(), "--format", "json",
    ]);
    assert!(replay.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&replay)).unwrap();
    assert_eq!(v["results"], w["results"]);
}

#[test]
fn transcript_has_one_line_per_round() {
    let dir = std::env::temp_dir().join("qcc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("transcript.jsonl");
    let out = qcc(&[
        "simulate", "--rounds", "250", "--seed", "5", "--transcript", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 250);
    for line in &lines {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["alice_sends"], 1);
        assert_eq!(rec["bob_sends"], 1);
    }
}

#[test]
fn baseline_reports_both_gaps() {
    let out = qcc(&["baseline", "--restarts", "6", "--seed", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["classical_max"].as_f64().unwrap(), 0.75);
    assert!((v["quantum_optimum"]["best_success"].as_f64().unwrap() - 0.853553).abs() < 1e-3);
    assert!(v["gaps"]["qutrit_gap"].as_f64().unwrap() > v["gaps"]["qubit_gap"].as_f64().unwrap());
}
