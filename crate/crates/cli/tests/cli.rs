use std::process::{Command, Output};

fn qmcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmcert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn qexp_of_extremal_form() {
    let o = qmcert(&["qexp", "X(12,1)", "--prec", "6"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "1*q^(2) + 56*q^(3) + 1002*q^(4) + 9296*q^(5) + 57708*q^(6) + O(q^(13/2))"
    );
}

#[test]
fn qexp_of_theta_and_zero() {
    let o = qmcert(&["qexp", "H2", "--prec", "2"]);
    assert_eq!(stdout(&o).trim(), "16*q^(1/2) + 64*q^(3/2) + O(q^(5/2))");
    let o = qmcert(&["qexp", "Delta - (E4^3 - E6^2)/1728", "--prec", "10"]);
    assert_eq!(stdout(&o).trim(), "O(q^(21/2))");
}

#[test]
fn parse_error_reports_offset() {
    let o = qmcert(&["qexp", "E2 + Q4", "--prec", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("Q4") && err.contains("byte 5"), "{err}");
}

#[test]
fn eval_and_precision_override() {
    let o = qmcert(&["eval", "E2 - 6*P*T", "--t", "1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v + 3.0 / std::f64::consts::PI).abs() < 1e-12);
    let o = Command::new(env!("CARGO_BIN_EXE_qmcert"))
        .args(["eval", "E4", "--t", "1"])
        .env("QMCERT_PREC", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncat"));
}

#[test]
fn extremal_subcommand() {
    let o = qmcert(&["extremal", "--weight", "6", "--depth", "1", "--qexp", "3"]);
    let out = stdout(&o);
    assert!(out.contains("E2*E4"), "{out}");
    assert!(out.contains("1*q^(1) + 18*q^(2) + 84*q^(3)"), "{out}");
    assert!(!qmcert(&["extremal", "--weight", "6", "--depth", "2"]).status.success());
}

#[test]
fn verify_extremal_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qmcert(&["verify", "--suite", "extremal", "--report", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["certificates"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn corrupted_constant_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qmcert(&[
        "verify",
        "--suite",
        "appendix",
        "--report",
        path.to_str().unwrap(),
        "--check",
        "S[12](S[10]((E2*E4 - E6)^2)) == 5/6*E4*(E2*E4 - E6)^2 + 172801*Delta*X(4,2)",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual:"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bad = v["certificates"].as_array().unwrap().iter().find(|c| c["name"] == "check_1").unwrap();
    assert_eq!(bad["verdict"], "fail");
    assert_ne!(bad["evidence"]["residual"], "0");
}

#[test]
fn figure_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d24.csv");
    let o = qmcert(&["figure", "--name", "d24", "--out", path.to_str().unwrap(), "--points", "20"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,F/G,note"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    let v: f64 = first[1].parse().unwrap();
    assert!((v - 43.771).abs() < 1e-3);
    assert_eq!(text.lines().count(), 21);
}
