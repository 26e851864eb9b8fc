use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superaudit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
    }
    assert_eq!(fs::read_to_string(&path).unwrap(), actual, "golden mismatch: {}", path.display());
}

#[test]
fn suite_reports_match_golden() {
    for suite in ["susy1", "susy2", "sl11-matrix", "incidence", "realform", "aut-c11", "stabilizer"] {
        let o = run(&["verify", "--suite", suite, "--format", "text"]);
        golden(&format!("{suite}.txt"), &stdout(&o));
    }
    let o = run(&["verify", "--suite", "realform", "--conjugation", "graded"]);
    golden("realform.graded.txt", &stdout(&o));
}

#[test]
fn all_suite_is_deterministic() {
    let a = run(&["verify", "--suite", "all", "--format", "text"]);
    let b = run(&["verify", "--suite", "all", "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1), "discrepancies make the exit code 1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "stabilizer"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "susy2"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--conjugation", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--context", "c11", "zeta*q"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--context", "missing", "z"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_report_parses() {
    let o = run(&["verify", "--suite", "aut-c11", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "aut-c11");
    assert_eq!(v["mode"], "multiplicative");
    let checks = v["checks"].as_array().unwrap();
    let table = checks.iter().find(|c| c["name"] == "aut.U.table").unwrap();
    assert_eq!(table["status"], "discrepancy");
    for c in checks {
        for k in ["name", "status", "witness", "anchor"] {
            assert!(c[k].is_string(), "{k} missing");
        }
    }
}

#[test]
fn eval_and_bracket() {
    let o = run(&["eval", "--context", "sl11", "zeta*eta + 2*v^-1"]);
    assert_eq!(o.status.code(), Some(2), "zeta is not a generator of sl11");
    let o = run(&["eval", "--context", "sl11", "xi*eta + 2*v^-1 + xi^2"]);
    assert_eq!(stdout(&o), "1*xi*eta + 2*v^-1\n");
    let o = run(&["eval", "even z; odd zeta; d/dzeta + zeta*d/dz"]);
    assert_eq!(stdout(&o), "1*zeta*d/dz + 1*d/dzeta\n");
    let o = run(&["bracket", "--context", "susy2", "d/dzeta1 + zeta2*d/dz", "d/dzeta2 + zeta1*d/dz"]);
    assert_eq!(stdout(&o), "2*d/dz\n");
    let o = run(&["bracket", "--context", "c11", "d/dzeta + zeta*d/dz", "d/dzeta + zeta*d/dz"]);
    assert_eq!(stdout(&o), "2*d/dz\n");
}

#[test]
fn list_output() {
    let o = run(&["list"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("grp.mult.c11x") && l.contains("group")));
    assert!(text.lines().any(|l| l.starts_with("inv.sigma.graded") && l.contains("morphism")));
    golden("list.txt", &text);
}
