//! Graphviz DOT export. Node order follows vertex or step order, so output is
//! deterministic.

use std::fmt::Write;

use crate::adjacency::{AdjacencyReport, ChainMove, GraphChain};
use crate::blowup::BlowUpSpec;
use crate::graph::DualGraph;
use crate::monomial::MonomialIdeal;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n");
    for (i, w) in g.self_ints().iter().enumerate() {
        writeln!(out, "  v{i} [label={}];", quote(&format!("v{i} ({w})"))).unwrap();
    }
    for [a, b] in g.edges() {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The cycle and its adjacent-below ideals: one node per type-1 entry,
/// free family and satellite point.
pub fn adjacency_fan_to_dot(report: &AdjacencyReport) -> String {
    let mut out = String::from("digraph adjacency {\n");
    writeln!(out, "  root [label={}];", quote(&format!("Z={} ({})", report.cycle, report.colength))).unwrap();
    let mut k = 0;
    let mut child = |out: &mut String, label: String, edge: &str| {
        writeln!(out, "  n{k} [label={}];", quote(&label)).unwrap();
        writeln!(out, "  root -> n{k} [label={}];", quote(edge)).unwrap();
        k += 1;
    };
    for t in &report.type1 {
        child(&mut out, format!("{} ({})", t.new_cycle, t.colength), &format!("type1 {:?}", t.component));
    }
    for f in &report.type2_free {
        child(&mut out, format!("{} ({})", f.new_cycle, f.colength), &format!("free v{}", f.curve));
    }
    for s in &report.type2_satellite {
        child(&mut out, format!("{} ({})", s.new_cycle, s.colength), &format!("satellite v{}-v{}", s.edge[0], s.edge[1]));
    }
    out.push_str("}\n");
    out
}

fn move_label(m: &ChainMove) -> String {
    match m {
        ChainMove::Type1 { component, .. } => format!("type1 {component:?}"),
        ChainMove::BlowUp(BlowUpSpec::Free(c)) => format!("free v{c}"),
        ChainMove::BlowUp(BlowUpSpec::Satellite([a, b])) => format!("satellite v{a}-v{b}"),
    }
}

pub fn graph_chain_to_dot(chain: &GraphChain) -> String {
    let mut out = String::from("digraph chain {\n");
    writeln!(out, "  s0 [label={}];", quote(&format!("{} ({})", chain.start, chain.start_colength))).unwrap();
    for (i, step) in chain.steps.iter().enumerate() {
        let j = i + 1;
        writeln!(out, "  s{j} [label={}];", quote(&format!("{} ({})", step.cycle, step.colength))).unwrap();
        writeln!(out, "  s{i} -> s{j} [label={}];", quote(&move_label(&step.via))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// `start` followed by the ideals of `chain`.
pub fn monomial_chain_to_dot(start: &MonomialIdeal, chain: &[MonomialIdeal]) -> String {
    let mut out = String::from("digraph chain {\n");
    for (i, ideal) in std::iter::once(start).chain(chain).enumerate() {
        writeln!(out, "  s{i} [label={}];", quote(&ideal.to_string())).unwrap();
        if i > 0 {
            writeln!(out, "  s{} -> s{i};", i - 1).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
