mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use augfiber::ald::FlatAugmentedLink;
use augfiber::cli::Report;
use augfiber::stallings::NielsenTrace;
use serde_json::Value;
use tempfile::TempDir;

use common::{FIGURE_EIGHT, TREFOIL};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augfiber"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn put_ald(dir: &TempDir, name: &str, ald: &FlatAugmentedLink) -> PathBuf {
    put(dir, name, &ald.to_json())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("report JSON")
}

#[test]
fn random_is_deterministic() {
    let a = run(&["random", "--seed", "7", "--size", "5"]);
    let b = run(&["random", "--seed", "7", "--size", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    FlatAugmentedLink::from_json(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
}

#[test]
fn path_tree_exits_zero() {
    let dir = TempDir::new().unwrap();
    let p = put_ald(&dir, "path.json", &FlatAugmentedLink::from_graph(3, &[(0, 1), (1, 2)], &[]));
    let out = run(&["analyze", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.digest.len(), 64);
    assert!(r.oracle.is_none());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn triangle_exits_one_with_cycle() {
    let dir = TempDir::new().unwrap();
    let p = put_ald(&dir, "tri.json", &FlatAugmentedLink::from_graph(3, &[(0, 1), (1, 2), (2, 0)], &[]));
    let out = run(&["analyze", "--verify", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["certificates"][0]["kind"], "cycle");
    assert_eq!(v["oracle"]["agrees"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotFibered"));
}

#[test]
fn pd_input_with_trace() {
    let dir = TempDir::new().unwrap();
    let p = put(&dir, "fig8.pd", FIGURE_EIGHT);
    let trace = dir.path().join("trace.json");
    let out = run(&["analyze", "--emit-trace", s(&trace), s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.stages.diagram.as_ref().unwrap().twist_regions.len(), 2);
    assert!(r.oracle.unwrap().agrees);
    let t: NielsenTrace = serde_json::from_str(&std::fs::read_to_string(trace).unwrap()).unwrap();
    assert!(t.is_consistent());
}

#[test]
fn errors_are_module_qualified() {
    let dir = TempDir::new().unwrap();
    let p = put(&dir, "trefoil.pd", TREFOIL);
    let out = run(&["analyze", s(&p)]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r.error.unwrap().code, "augment-pipeline.OddTwistRegion");
    assert!(r.verdict.is_none());

    let out = run(&["analyze", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out).error.unwrap().code, "cli.Io");
}

#[test]
fn batch_keeps_order_and_worst_code() {
    let dir = TempDir::new().unwrap();
    let tree = put_ald(&dir, "a.json", &FlatAugmentedLink::from_graph(2, &[(0, 1)], &[]));
    let cyc = put_ald(&dir, "b.json", &FlatAugmentedLink::from_graph(2, &[(0, 1), (1, 0)], &[]));
    let out = run(&["verify", s(&tree), s(&cyc), s(&tree)]);
    assert_eq!(out.status.code(), Some(1));
    let reports: Vec<Report> = serde_json::from_slice(&out.stdout).unwrap();
    let inputs: Vec<_> = reports.iter().map(|r| r.input.clone()).collect();
    assert_eq!(inputs, [s(&tree), s(&cyc), s(&tree)]);
    assert_eq!(reports.iter().map(Report::exit_code).collect::<Vec<_>>(), [0, 1, 0]);
}

#[test]
fn fill_deplumb_lift() {
    let dir = TempDir::new().unwrap();
    let x = FlatAugmentedLink::from_graph(3, &[(0, 1), (1, 2)], &[(0, 2)]);
    let p = put_ald(&dir, "x.json", &x);

    let out = run(&["fill", "--sign-convention", "alternate", s(&p)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(r.stages.filled_images.is_some());

    let program = put(&dir, "prog.json", r#"[{"circle": "B1", "kind": "B", "sign": -1}]"#);
    let out = run(&["fill", "--program", s(&program), s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out).stages.filled_images.is_none());

    let out = run(&["deplumb", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["moves"][0]["chi_delta"], -2);
    assert_eq!(v["stages"]["output_ald"]["a_circles"], Value::Array(vec![]));

    let cyc = put_ald(&dir, "c.json", &FlatAugmentedLink::from_graph(2, &[(0, 1), (1, 0)], &[]));
    let out = run(&["lift", "--make-alternating", s(&cyc)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["moves"][0]["replays_to_input"], true);
}

#[test]
fn augment_flatten_and_dot() {
    let dir = TempDir::new().unwrap();
    let p = put(&dir, "fig8.pd", FIGURE_EIGHT);
    let out = run(&["augment", s(&p)]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let augmented = v["augmented"].as_str().unwrap().to_string();
    assert_eq!(v["instructions"].as_array().unwrap().len(), 2);

    let q = put(&dir, "aug.pd", &augmented);
    let out = run(&["flatten", s(&q)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let out = run(&["export-dot", s(&p)]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G_B {"));
    assert!(dot.contains("[label=\"B1\"]"));
}

#[test]
fn unbounded_flag_on_json_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = put_ald(&dir, "a.json", &FlatAugmentedLink::from_graph(1, &[], &[]));
    let out = run(&["analyze", "--unbounded", "1", s(&p)]);
    assert_eq!(report(&out).error.unwrap().code, "cli.Usage");
}

#[test]
fn reports_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = put(&dir, "fig8.pd", FIGURE_EIGHT);
    let out = run(&["analyze", "--verify", s(&p)]);
    let r = report(&out);
    let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
}
