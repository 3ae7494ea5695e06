use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilblat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ws() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/workspace.json")
        .display()
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn with_ws(args: &[&str]) -> String {
    let w = ws();
    let mut all = vec!["--workspace", w.as_str()];
    all.extend_from_slice(args);
    ok(&all)
}

#[test]
fn signature_of_builtins() {
    assert!(ok(&["signature", "K3"]).contains("signature: (3, 0, 19)\n"));
    assert!(ok(&["signature", "DOUADY(2)"]).contains("signature: (3, 0, 20)\n"));
    assert!(ok(&["signature", "U"]).contains("signature: (1, 0, 1)\n"));
    assert!(ok(&["signature", "E8_MINUS"]).contains("discriminant: 1\n"));
}

#[test]
fn index_examples() {
    assert!(with_ws(&["index", "L2", "L2_id"]).starts_with("lambda = 1\n"));
    assert!(with_ws(&["index", "BEAUVILLE_NS", "beauville"]).starts_with("lambda = -3\n"));
    assert!(with_ws(&["index", "L2", "lift_phi"]).starts_with("lambda = 1\n"));
    assert!(with_ws(&["index", "DOUADY(2)", "refl_delta"]).starts_with("lambda = -1\n"));
}

#[test]
fn natural_check_examples() {
    assert!(with_ws(&["natural-check", "L2", "L2_id"]).starts_with("NATURAL\n"));
    assert!(with_ws(&["natural-check", "L2", "lift_phi"]).starts_with("NATURAL\nsurface block:\n"));
    assert_eq!(
        with_ws(&["natural-check", "BEAUVILLE_NS", "beauville"]),
        "NOT-NATURAL\nf(delta): (2, -3/2)\n"
    );
}

#[test]
fn invariant_of_swap_on_u() {
    let out = with_ws(&["invariant", "G_swap"]);
    assert!(
        out.contains("Tr_G:\n  rank: 1\n  basis:\n    - (1, 1)\n"),
        "{out}"
    );
    assert!(
        out.contains("Ss_G:\n  rank: 1\n  basis:\n    - (1, -1)\n"),
        "{out}"
    );
    let trivial = with_ws(&["invariant", "G_trivial"]);
    assert!(trivial.contains("Tr_G:\n  rank: 2\n"));
}

#[test]
fn classify_examples() {
    assert!(with_ws(&["classify", "HYP"]).contains("type: Hyperbolic\n"));
    assert!(with_ws(&["classify", "PAR"]).contains("type: Parabolic\n"));
    assert!(with_ws(&["classify", "ELL"]).contains("type: Elliptic\n"));
    let out = with_ws(&["classify", "L2", "NS_PAR_L2"]);
    assert!(out.contains(
        "Tr signature: (2, 1, 19)\nexpected Tr signature: (2, 1, 19)\nTr pattern: matches\n"
    ));
}

#[test]
fn classify_without_a_type_exits_3() {
    let o = run(&["classify", "K3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(3, 0, 19)"));
}

#[test]
fn solve_index_output() {
    let out = ok(&["solve-index", "2", "4", "30"]);
    assert!(out.contains("solutions: 10\n"));
    let pairs: Vec<&str> = out.lines().filter(|l| l.starts_with("  - ")).collect();
    assert_eq!(pairs.first(), Some(&"  - (-17, -24)"));
    assert_eq!(pairs.last(), Some(&"  - (17, 24)"));
    let neg = ok(&["solve-index", "2", "-4", "5"]);
    assert!(neg.contains("d2: -4\n"));
}

#[test]
fn json_mirrors_text() {
    let out = with_ws(&["--json", "index", "BEAUVILLE_NS", "beauville"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lambda"], "-3");
    assert_eq!(v["d"], serde_json::json!(["4"]));
    let out = ok(&["signature", "K3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["signature"], serde_json::json!(["3", "0", "19"]));
}

#[test]
fn complement_reports_saturation() {
    let out = with_ws(&["complement", "U_DIAG2"]);
    assert!(
        out.contains("saturated: false\nsaturation index: 2\nsaturation basis:\n  - (1, 1)\n"),
        "{out}"
    );
    assert!(out.contains("double complement is saturation: true\n"));
}

#[test]
fn exit_codes() {
    let w = ws();
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["signature", "NOPE"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["solve-index", "1", "4", "30"]), Some(2));
    assert_eq!(code(&["solve-index", "2", "0", "30"]), Some(2));
    assert_eq!(code(&["solve-index", "2", "4", "x"]), Some(2));
    assert_eq!(
        code(&["--workspace", "/nonexistent/ws.json", "report"]),
        Some(2)
    );
    assert_eq!(code(&["--workspace", &w, "index", "K3", "k3_phi"]), Some(2));
    assert_eq!(
        code(&["--workspace", &w, "index", "L2", "beauville"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "--workspace",
            &w,
            "natural-check",
            "BEAUVILLE_NS",
            "not_isometry"
        ]),
        Some(3)
    );
    assert_eq!(code(&["--help"]), Some(0));
    let o = run(&["--workspace", &w, "isometry-check", "not_isometry"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("(M^T G M)[0][1] = 4, expected 0"));
}
