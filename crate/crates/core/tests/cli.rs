use std::process::{Command, Output};

fn qcong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_text_dump() {
    let o = qcong(&["expand", "q", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t0\n1\t1\n");
}

#[test]
fn expand_json_dump() {
    let o = qcong(&[
        "expand", "-f[1]", "--order", "3", "--ring", "mod64", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["ring"], "mod2^64");
    assert_eq!(v["coeffs"][0], (u64::MAX).to_string());
    assert_eq!(v["coeffs"][1], "1");
}

#[test]
fn check_true_and_false_progressions() {
    let o = qcong(&[
        "check",
        "--series",
        "C",
        "--progression",
        "8,6",
        "--mod",
        "8",
        "--nmax",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcong(&[
        "check",
        "--series",
        "C",
        "--progression",
        "8,4",
        "--mod",
        "8",
        "--nmax",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("index=12 value=284"));
    let o = qcong(&[
        "check",
        "--series",
        "Ck:2",
        "--progression",
        "8,4",
        "--mod",
        "4",
        "--nmax",
        "5",
    ]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
}

#[test]
fn relation_subcommand() {
    let o = qcong(&[
        "relation", "--series", "C", "--lhs", "16,11", "--rhs", "4,3", "--sign", "-", "--mod", "8",
        "--nmax", "300",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcong(&[
        "relation", "--series", "C", "--lhs", "16,11", "--rhs", "4,3", "--sign", "+", "--mod", "8",
        "--nmax", "300",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_matches_suite_verdict() {
    let o = qcong(&[
        "verify",
        "f3(q^8) - 2*q*omega(-q) - 2*q^3*omega(-q^4)",
        "f[1]^2*f[4]^8/(f[2]^5*f[8]^4)",
        "--order",
        "200",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcong(&[
        "verify",
        "D[4,1](B(q))",
        "2*f[2]^8/f[1]^7",
        "--order",
        "150",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcong(&[
        "verify",
        "D[2,1](C)",
        "2*f[2]^2*f[4]^5/f[8]^2 + q*omega(-q^2) - f[2]^8*f[8]^2/(f[1]^4*f[4]^5)",
        "--order",
        "150",
        "--mod",
        "8",
        "--ring",
        "mod64",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcong(&["verify", "C", "C + q^5", "--order", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_refuses_mod64_equality() {
    let o = qcong(&["verify", "C", "C", "--order", "10", "--ring", "mod64"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--mod"));
}

#[test]
fn usage_and_parse_errors() {
    let o = qcong(&["expand", "q", "--order", "3", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = qcong(&["nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcong(&["expand", "q +", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 3"));
    let o = qcong(&["expand", "1/(2+q)", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_lines() {
    let o = qcong(&["oracle", "--k", "limit", "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t0\n1\t1\n2\t2\n3\t5\n4\t8\n");
    let o = qcong(&["oracle", "--k", "2", "--nmax", "5"]);
    assert!(stdout(&o).ends_with("5\t15\n"));
}

#[test]
fn scan_is_labeled_empirical() {
    let o = qcong(&["scan", "--amax", "8", "--mods", "4,8", "--nmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# empirical, unproven"));
    assert!(text.contains("\n8\t4\t4\n"));
    assert!(text.contains("\n8\t6\t8\n"));
}

#[test]
fn suite_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qcong(&[
        "suite",
        "--order-identity",
        "120",
        "--order-scan",
        "4000",
        "--kmax",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order_identity"], 120);
    assert_eq!(v["order_scan"], 4000);
    assert_eq!(v["k_max"], 1);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["status"] == "pass"));
    assert!(claims
        .iter()
        .any(|c| c["id"] == "eq-2-2" && c["paper_eq"] == "(2-2)"));
}

#[test]
fn small_suite_exits_one_on_order_too_small() {
    let o = qcong(&[
        "suite",
        "--order-identity",
        "60",
        "--order-scan",
        "100",
        "--kmax",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("ORDER-TOO-SMALL"));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")), "{text}");
}
