use std::path::Path;
use std::process::{Command, Output};

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_quantum_circulant() {
    let o = qsym(&["decide", "C12(4,5)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("HasQuantumSymmetry"), "{out}");
    assert!(out.contains("sigma = (1 7)(3 9)(5 11)"), "{out}");
}

#[test]
fn decide_writes_a_certificate_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k2c6.cert");
    let o = qsym(&["decide", "K2xC6", "--output", path_arg(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NoQuantumSymmetry"));
    assert!(stdout(&o).contains("certificate written to"));

    let o = qsym(&["certificate", "--verify", path_arg(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = qsym(&["certificate", "--verify", path_arg(&cert), "C12(2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rejected at step 0"), "{}", stdout(&o));
}

#[test]
fn tampered_certificate_reports_the_step() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c5.cert");
    let o = qsym(&["certificate", "C5", "--format", "text", "--output", path_arg(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("q=1", "q=2", 1);
    assert_ne!(text, tampered);
    let bad = dir.path().join("tampered.cert");
    std::fs::write(&bad, tampered).unwrap();
    let o = qsym(&["certificate", "--verify", path_arg(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rejected at step 1"), "{}", stdout(&o));
}

#[test]
fn c5_latex_tables() {
    let o = qsym(&["certificate", "C5", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1 & 2 & 3 & 1 \\\\"), "{out}");
    assert!(out.contains("1 & 3 & 2 & $\\{1\\}$ \\\\"), "{out}");
}

#[test]
fn certificate_refused_for_quantum_graph() {
    let o = qsym(&["certificate", "C12(5)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no commutativity certificate"));
}

#[test]
fn groebner_commands() {
    let o = qsym(&["groebner", "K3", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("commutative in A+(G)"));

    let o = qsym(&["groebner", "C4", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("proves nothing"));

    let o = qsym(&["groebner", "K3", "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("below the generator degree"));
}

#[test]
fn graph_files_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(&file, "# petersen\np 10\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 1 6\ne 2 7\ne 3 8\ne 4 9\ne 5 10\ne 6 8\ne 8 10\ne 10 7\ne 7 9\ne 9 6\n").unwrap();
    let o = qsym(&["decide", path_arg(&file), "--timeout", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p 3\ne 1 4\n").unwrap();
    assert_eq!(qsym(&["decide", path_arg(&bad)]).status.code(), Some(1));
    assert_eq!(qsym(&["decide", "NoSuchGraph"]).status.code(), Some(1));
    assert_eq!(qsym(&["decide", "C5", "--timeout", "0"]).status.code(), Some(1));
    assert_eq!(qsym(&["show", path_arg(&dir.path().join("missing.txt"))]).status.code(), Some(1));
}

#[test]
fn report_subclass_and_structured_output() {
    let o = qsym(&["report", "--subclass", "circulant"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().filter(|l| l.starts_with("| C12") || l.starts_with("| K12")).count();
    assert_eq!(rows, 12);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qsym(&["report", "--format", "structured", "--jobs", "2", "-o", path_arg(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 37);
    let flagged = v["rows"].as_array().unwrap().iter().filter(|r| r["has_qsym"] == true).count();
    assert_eq!(flagged, 21);
}

#[test]
fn list_and_show() {
    let o = qsym(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Antip(TruncK4)"));
    let o = qsym(&["show", "Icosahedron", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["aut_order"], 120);
    assert_eq!(v["vertex_transitive"], true);
}
