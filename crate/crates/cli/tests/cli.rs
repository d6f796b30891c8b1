use std::path::PathBuf;
use std::process::{Command, Output};

use complete_ideals::adjacency::{AdjacencyReport, ComponentSet, GraphChain};
use complete_ideals::fiber_cone::{FiberConePresentation, ProjectivePoint};
use complete_ideals::monomial::EnumerationReport;
use complete_ideals::oracle::Certificate;
use complete_ideals::{Cycle, MonomialIdeal, QCycle};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_complete-ideals")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses the report as `T` and checks it serializes back to the same text.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let text = stdout(args);
    let value: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?}");
    value
}

#[test]
fn colength_of_e_on_a4() {
    let out = stdout(&["graph", "colength", "--graph", &fixture("an4.json"), "--cycle", &fixture("e4.json")]);
    assert_eq!(out, "1\n");
    stdout(&["graph", "colength", "--graph", &fixture("an4.json"), "--cycle", &fixture("e4.json"), "--golden", &fixture("colength_an4.golden")]);
}

#[test]
fn adjacency_report_on_a2() {
    let r: AdjacencyReport = round_trip(&["adjacency", "report", "--graph", &fixture("an2.json"), "--cycle", &fixture("e2.json")]);
    assert_eq!(r.counts(), (0, 2, 1));
}

#[test]
fn monomial_chain_m_to_m3() {
    let chain: Vec<MonomialIdeal> = round_trip(&["monomial", "chain", "--from", &fixture("m.json"), "--to", &fixture("m3.json")]);
    assert_eq!(chain.len(), 5);
    let text = stdout(&["monomial", "chain", "--from", &fixture("m.json"), "--to", &fixture("m3.json"), "--format", "text"]);
    assert!(text.starts_with("5 steps\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn reports_round_trip() {
    let g = fixture("an3.json");
    let k: QCycle = round_trip(&["graph", "k", "--graph", &g]);
    assert_eq!(k.coeffs.len(), 3);
    let z: Cycle = round_trip(&["graph", "fundamental", "--graph", &g]);
    assert_eq!(z, Cycle::new(vec![1, 1, 1]));
    let comps: ComponentSet = round_trip(&["adjacency", "e0", "--graph", &g, "--cycle", "[1,1,1]"]);
    assert_eq!(comps.0, vec![vec![1]]);
    let chain: GraphChain = round_trip(&["adjacency", "chain", "--graph", &g, "--from", "[1,1,1]", "--to", "[1,2,1]"]);
    assert_eq!(chain.len(), 1);
    let r: EnumerationReport = round_trip(&["monomial", "enumerate", "--colength", "4"]);
    assert_eq!((r.total, r.integrally_closed), (5, 4));
    let closure: MonomialIdeal = round_trip(&["monomial", "closure", "--ideal", r#"{"dim":2,"gens":[[2,0],[0,2]]}"#]);
    assert_eq!(closure, MonomialIdeal::maximal_power(2, 2).unwrap());
    let adj: Vec<MonomialIdeal> = round_trip(&["monomial", "adjacent", "--ideal", &fixture("m.json")]);
    assert_eq!(adj.len(), 2);
    let ic: bool = round_trip(&["monomial", "ic", "--ideal", r#"{"dim":2,"gens":[[2,0],[0,2]]}"#]);
    assert!(!ic);
    let n: u64 = round_trip(&["monomial", "colength", "--ideal", &fixture("m3.json")]);
    assert_eq!(n, 6);
    let pres: FiberConePresentation = round_trip(&["fibercone", "builtin", "--name", "an_maximal_ideal", "--param", "3", "--field", "5"]);
    let pres_json = serde_json::to_string(&pres).unwrap();
    let points: Vec<ProjectivePoint> = round_trip(&["fibercone", "points", "--presentation", &pres_json]);
    assert_eq!(points.len(), 11);
    let on: bool = round_trip(&["fibercone", "check", "--presentation", &pres_json, "--point", "[0,0,1]"]);
    assert!(on);
    let cert: Certificate = round_trip(&["oracle", "classify", "--field", "5", "--y", "[[1,[0,1]]]", "--ideal", "[[[1,[2,0]]],[[1,[0,2]]]]"]);
    assert_eq!(cert.is_integral(), Some(false));
    let cert: Certificate = round_trip(&["oracle", "classify", "--field", "rationals", "--y", "[[1,[1,1]]]", "--ideal", "[[[1,[2,0]]],[[1,[0,2]]]]"]);
    assert_eq!(cert.is_integral(), Some(true));
}

#[test]
fn blow_up_reports() {
    let text = stdout(&["blowup", "free", "--graph", &fixture("an2.json"), "--curve", "0", "--cycle", &fixture("e2.json")]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["colength"], 2);
    assert_eq!(v["exceptional"], 2);
    let text = stdout(&["blowup", "satellite", "--graph", &fixture("an2.json"), "--edge", "0", "1"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["graph"]["vertices"][0]["self_int"], -3);
    assert!(v.get("cycle").is_none());
}

#[test]
fn domain_errors_exit_one_with_kind() {
    let out = run(&["graph", "colength", "--graph", &fixture("an2.json"), "--cycle", "[1,0]"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "NotAntiNef");
    let bad = r#"{"vertices":[{"self_int":-1},{"self_int":-1}],"edges":[[0,1]]}"#;
    let out = run(&["graph", "validate", "--graph", bad]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "NotNegativeDefinite");
    let out = run(&["adjacency", "report", "--graph", &fixture("star.json"), "--cycle", "[2,1,1,1,1]"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "NotRational");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["graph"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "k", "--graph", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["monomial", "colength", "--ideal", &fixture("m.json"), "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn dot_exports() {
    let dot = stdout(&["graph", "validate", "--graph", &fixture("an3.json"), "--format", "dot"]);
    assert!(dot.starts_with("graph dual {"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -- ").count(), 2);
    let fan = stdout(&["adjacency", "report", "--graph", &fixture("an4.json"), "--cycle", &fixture("e4.json"), "--format", "dot"]);
    assert_eq!(fan.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 4);
    let empty = stdout(&["monomial", "chain", "--from", &fixture("m.json"), "--to", &fixture("m.json"), "--format", "dot"]);
    assert_eq!(empty.matches("[label=").count(), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["adjacency", "chain", "--graph", &fixture("an2.json"), "--from", "[1,1]", "--to", "[2,2]"];
    let first = stdout(&args);
    for _ in 0..3 {
        assert_eq!(stdout(&args), first);
    }
    let text = ["--format", "text"];
    let args: Vec<&str> = args.iter().chain(&text).copied().collect();
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn rational_report() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["graph", "rational", "--graph", &fixture("star.json")])).unwrap();
    assert_eq!(v["rational"], false);
    assert_eq!(v["fundamental_genus"], 1);
}
