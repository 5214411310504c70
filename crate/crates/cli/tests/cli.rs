use std::path::PathBuf;
use std::process::{Command, Output};

use ctxkit::report::{ReportDocument, Section, Value};

fn ctxkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctxkit"))
        .args(args)
        .env_remove("CTXKIT_TOL")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> ReportDocument {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = ctxkit(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    ReportDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn section<'a>(doc: &'a ReportDocument, title: &str) -> &'a Section {
    doc.sections.iter().find(|s| s.title == title).unwrap_or_else(|| panic!("no section {title}"))
}

fn number(s: &Section, key: &str) -> f64 {
    match s.get(key) {
        Some(Value::Number(v)) => v.parse().unwrap(),
        other => panic!("{key}: {other:?}"),
    }
}

fn integer(s: &Section, key: &str) -> i64 {
    match s.get(key) {
        Some(Value::Integer(v)) => *v,
        other => panic!("{key}: {other:?}"),
    }
}

fn text<'a>(s: &'a Section, key: &str) -> &'a str {
    match s.get(key) {
        Some(Value::Text(v)) => v,
        other => panic!("{key}: {other:?}"),
    }
}

#[test]
fn cabello_rays_are_ks_uncolorable() {
    let doc = json(&["graph", &data("cabello18.rays")]);
    assert_eq!(doc.schema, 1);
    assert_eq!(doc.command, "graph");
    let g = section(&doc, "graph");
    assert_eq!(integer(g, "vertices"), 18);
    assert_eq!(integer(g, "bases"), 9);
    assert_eq!(integer(g, "alpha"), 4);
    assert!((number(g, "theta") - 4.5).abs() < 1e-6);
    assert_eq!(text(g, "verdict"), "KS-uncolorable");
}

#[test]
fn icosahedron_ratio() {
    let g = json(&["graph", &data("icosa.graph")]);
    let g = section(&g, "graph");
    assert_eq!(integer(g, "alpha"), 3);
    assert!((number(g, "theta") - 3.0 * (5f64.sqrt() - 1.0)).abs() < 1e-4);
    assert!((number(g, "theta_over_alpha") - (5f64.sqrt() - 1.0)).abs() < 1e-4);
    assert!(g.get("verdict").is_none());
}

#[test]
fn complete_graph_is_trivial() {
    let g = json(&["graph", &data("k4.graph"), "--tol", "1e-9"]);
    let g = section(&g, "graph");
    assert_eq!(integer(g, "alpha"), 1);
    assert!((number(g, "theta") - 1.0).abs() < 1e-8);
}

#[test]
fn yu_oh_rays_are_colorable() {
    let g = json(&["graph", "yu_oh13"]);
    assert_eq!(text(section(&g, "graph"), "verdict"), "KS-colorable");
}

#[test]
fn inequality_headlines() {
    let yo = json(&["ineq", "yo", "--state", "mixed"]);
    let s = section(&yo, "yu-oh");
    assert!((number(s, "value") - 29.0 / 3.0).abs() < 1e-9);
    assert_eq!(number(s, "classical_bound"), 9.0);
    assert_eq!(s.get("violated"), Some(&Value::Bool(true)));

    let omega = json(&["ineq", "omega", "--state", "xi"]);
    let s = section(&omega, "omega");
    assert!((number(s, "value") - 18.0).abs() < 1e-9);
    assert_eq!(number(s, "classical_bound"), 16.0);
    assert_eq!(s.get("violated"), Some(&Value::Bool(true)));

    let magic = json(&["ineq", "magic", "--state", "mixed"]);
    let s = section(&magic, "magic");
    assert!((number(s, "value") + 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(s.get("violated"), Some(&Value::Bool(false)));

    let clfc = json(&["ineq", "clfc", "--state", "maxent3x3"]);
    assert!((number(section(&clfc, "clfc"), "value") - 1.0 / 9.0).abs() < 1e-9);
}

#[test]
fn avn_on_its_stabilizer_state() {
    let doc = json(&["ineq", "avn", "--state", "xi", "--system", &data("avn_cabello01.txt")]);
    let s = section(&doc, "avn");
    assert_eq!(text(s, "verdict"), "contradiction");
    assert!(number(s, "max_deviation") < 1e-9);

    let control = json(&["avn", "bell_control"]);
    let s = section(&control, "avn");
    assert_eq!(text(s, "verdict"), "consistent");
    assert!(s.get("model").is_some());
}

#[test]
fn state_files_are_read() {
    let dir = std::env::temp_dir().join(format!("ctxkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z1.state");
    std::fs::write(&path, "dim 3\npure (1, 0, 0)\n").unwrap();
    let doc = json(&["ineq", "yo", "--state", path.to_str().unwrap()]);
    assert!((number(section(&doc, "yu-oh"), "value") - 29.0 / 3.0).abs() < 1e-9);

    let bad = dir.join("bad.state");
    std::fs::write(&bad, "dim 3\nmixed\n1 0 0\n0 1 0\n0 0 x\n").unwrap();
    let out = ctxkit(&["ineq", "yo", "--state", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(ctxkit(&["graph", "no-such-input"]).status.code(), Some(2));
    assert_eq!(ctxkit(&["ineq", "bogus"]).status.code(), Some(2));
    assert_eq!(ctxkit(&["ineq", "clfc", "--state", "xi"]).status.code(), Some(2));
    assert_eq!(ctxkit(&[]).status.code(), Some(2));
}

#[test]
fn tolerance_environment_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_ctxkit"))
        .args(["graph", "k4"])
        .env("CTXKIT_TOL", "edge=banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_ctxkit"))
        .args(["graph", "k4", "--format", "json"])
        .env("CTXKIT_TOL", "sdp_gap=1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = ReportDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(doc.config.iter().any(|f| f.key == "tol" && f.value == Value::number(1e-6)));
}

#[test]
fn timings_only_on_request() {
    assert!(json(&["graph", "c5"]).timings.is_none());
    let doc = json(&["graph", "c5", "--timings"]);
    let stages: Vec<&str> = doc.timings.as_ref().unwrap().iter().map(|t| t.stage.as_str()).collect();
    assert_eq!(stages, ["independence", "theta"]);
}

#[test]
fn text_output_names_the_verdict() {
    let out = ctxkit(&["graph", "cabello18"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("KS-uncolorable"));
}

#[test]
fn selftest_reports_every_criterion() {
    let doc = json(&["selftest", "--seed", "3"]);
    let criteria = doc.sections.iter().filter(|s| s.title.starts_with("criterion-")).count();
    assert_eq!(criteria, 11);
    assert_eq!(section(&doc, "summary").get("all_passed"), Some(&Value::Bool(true)));
}
