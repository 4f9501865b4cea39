use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer-brauer"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_inline_pair() {
    let out = run(&[
        "analyze",
        "--first",
        r#"{"rt2":{"a":5,"b":7}}"#,
        "--second",
        r#"{"rt2":{"a":1,"b":2}}"#,
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["conclusion"], "trivial");
    assert_eq!(v["d"], 0);
}

#[test]
fn analyze_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kummer-brauer"))
        .args(["--format", "text", "analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"first":{"rt2":{"a":40,"b":7}},"second":{"rt2":{"a":36,"b":37}}}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("conclusion: trivial"));
}

#[test]
fn inconclusive_still_exits_zero() {
    let out = run(&[
        "analyze",
        "--first",
        r#"{"weierstrass":[0,0,0,-1,0]}"#,
        "--second",
        r#"{"weierstrass":[0,0,0,1,0]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["conclusion"], "inconclusive");
}

#[test]
fn input_errors_exit_nonzero() {
    let singular = run(&[
        "analyze",
        "--first",
        r#"{"rt2":{"a":1,"b":1}}"#,
        "--second",
        r#"{"rt2":{"a":1,"b":2}}"#,
    ]);
    assert!(!singular.status.success());
    assert!(String::from_utf8_lossy(&singular.stderr).contains("error"));
    assert!(!run(&["analyze", "--first", "{not json", "--second", "{}"])
        .status
        .success());
    assert!(!run(&["analyze", "/nonexistent/spec.json"]).status.success());
    assert!(!run(&["matrix", "0", "1", "1", "2"]).status.success());
    assert!(!run(&["validate-criterion", "--ell", "7"]).status.success());
    assert!(
        !run(&["--bound-B", "ten", "frobenius", r#"{"rt2":{"a":1,"b":2}}"#])
            .status
            .success()
    );
    assert!(!run(&[
        "--bound-B",
        "5",
        "analyze",
        "--first",
        r#"{"rt2":{"a":5,"b":7}}"#,
        "--second",
        r#"{"rt2":{"a":1,"b":2}}"#
    ])
    .status
    .success());
    assert!(!run(&["--format", "yaml", "matrix", "5", "7", "1", "2"])
        .status
        .success());
}

#[test]
fn matrix_subcommand() {
    let out = run(&["matrix", "1", "-3", "1", "-3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["d"], 1);
    assert_eq!(v["d_nine_lines"], 1);
    assert_eq!(v["matrix"][0], serde_json::json!(["1", "-3", "-3", "-1"]));
    assert_eq!(v["nine_line_matrix"][0].as_array().unwrap().len(), 9);
}

#[test]
fn frobenius_subcommand() {
    let out = run(&[
        "--bound-B",
        "10",
        "frobenius",
        r#"{"weierstrass":[0,0,1,-1,0]}"#,
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["traces"]["3"], -3);
}

#[test]
fn search_is_seeded() {
    let a = run(&["--seed", "0", "search", "--count", "3"]);
    assert!(a.status.success());
    let v = json(&a);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["first"]["rt2"], serde_json::json!({"a": 5, "b": 7}));
    let b = run(&["--seed", "2", "search", "--count", "3"]);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(
        run(&["--seed", "2", "search", "--count", "3"]).stdout,
        b.stdout
    );
}

#[test]
fn validate_criterion_subcommand() {
    let out = run(&["validate-criterion", "--ell", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["pass"], true);
}
