//! Dispatch from parsed commands to the library, and report rendering.

use std::fmt::Write;

use complete_ideals::adjacency::{e_zero_components, AdjacencyReport, ChainMove, GraphChain};
use complete_ideals::dot;
use complete_ideals::fiber_cone::{builtin_presentation, enumerate_points_fq, is_adjacent_point, ProjectivePoint};
use complete_ideals::monomial::{enumerate_ic_monomial, EnumerationReport};
use complete_ideals::oracle::{classify, Bounds, Certificate};
use complete_ideals::{
    adjacent_below, adjacent_cycle_via_blowup, blow_up, chain_graph, BlowUpSpec, Cycle, DualGraph, MonomialIdeal, QCycle,
};
use serde::Serialize;

use crate::input;
use crate::{AdjacencyOp, BlowupOp, CliError, Command, FiberconeOp, Format, GraphOp, MonomialOp, OracleOp};

pub struct Report {
    json: String,
    text: String,
    dot: Option<String>,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        let json = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
        Report { json, text: text + "\n", dot: None }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.json),
            Format::Text => Ok(self.text),
            Format::Dot => self.dot.ok_or_else(|| CliError::Usage("dot output is not available for this command".into())),
        }
    }
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    graph: &'a DualGraph,
    leading_minors: Vec<String>,
}

#[derive(Serialize)]
struct RationalReport {
    rational: bool,
    fundamental_cycle: Cycle,
    fundamental_genus: i64,
}

#[derive(Serialize)]
struct BlowUpReport {
    graph: DualGraph,
    exceptional: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<Cycle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colength: Option<u64>,
}

fn qcycle_text(k: &QCycle) -> String {
    let parts: Vec<String> = k.coeffs.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

fn graph_text(g: &DualGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|[a, b]| format!("{a}-{b}")).collect();
    format!("self-intersections {:?}; edges [{}]", g.self_ints(), edges.join(", "))
}

fn adjacency_text(r: &AdjacencyReport) -> String {
    let (t1, free, sat) = r.counts();
    let mut out = format!("Z = {} (colength {}): {t1} type-1, {free} free, {sat} satellite", r.cycle, r.colength);
    for t in &r.type1 {
        write!(out, "\ntype-1 component {:?}: Y = {}, new cycle {}", t.component, t.y, t.new_cycle).unwrap();
    }
    for f in &r.type2_free {
        write!(out, "\nfree point on v{}: new cycle {}", f.curve, f.new_cycle).unwrap();
    }
    for s in &r.type2_satellite {
        write!(out, "\nsatellite point v{}-v{}: new cycle {}", s.edge[0], s.edge[1], s.new_cycle).unwrap();
    }
    for c in &r.rejected {
        write!(out, "\nrejected component {:?}: {}", c.component, c.reason).unwrap();
    }
    out
}

fn chain_text(c: &GraphChain) -> String {
    let mut out = format!("start {} (colength {})", c.start, c.start_colength);
    for (i, s) in c.steps.iter().enumerate() {
        let via = match &s.via {
            ChainMove::Type1 { component, .. } => format!("type-1 {component:?}"),
            ChainMove::BlowUp(BlowUpSpec::Free(v)) => format!("free point on v{v}"),
            ChainMove::BlowUp(BlowUpSpec::Satellite([a, b])) => format!("satellite point v{a}-v{b}"),
        };
        write!(out, "\n{}: {} -> {} (colength {})", i + 1, via, s.cycle, s.colength).unwrap();
    }
    out
}

fn ideals_text(ideals: &[MonomialIdeal]) -> String {
    ideals.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("\n")
}

fn enumeration_text(r: &EnumerationReport) -> String {
    let mut out = format!("colength {}: {} ideals, {} integrally closed", r.colength, r.total, r.integrally_closed);
    for w in &r.witnesses {
        write!(out, "\nnot closed: {w}").unwrap();
    }
    out
}

fn points_text(points: &[ProjectivePoint]) -> String {
    let mut out = format!("{} points", points.len());
    for p in points {
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        write!(out, "\n[{}]", coords.join(":")).unwrap();
    }
    out
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::Integral { degree, .. } => format!("integral: equation of degree {degree}"),
        Certificate::NotIntegral { weights, change, value_y, value_ideal } => format!(
            "not integral: weights {weights:?} after change {change:?}, v(y) = {value_y} < v(I) = {value_ideal}"
        ),
        Certificate::Unknown { bounds } => format!("unknown within {bounds:?}"),
    }
}

fn blowup(graph: &str, spec: BlowUpSpec, cycle: Option<&String>) -> Result<Report, CliError> {
    let g = input::graph(graph)?;
    let (b, cycle, colength) = match cycle {
        Some(arg) => {
            let z = input::cycle("cycle", arg)?;
            let (b, z2) = adjacent_cycle_via_blowup(&g, &z, spec)?;
            let c = b.graph.colength(&z2)?;
            (b, Some(z2), Some(c))
        }
        None => (blow_up(&g, spec)?, None, None),
    };
    let mut text = format!("{}; new curve v{}", graph_text(&b.graph), b.exceptional);
    if let (Some(z), Some(c)) = (&cycle, colength) {
        write!(text, "; cycle {z} (colength {c})").unwrap();
    }
    let dot = dot::graph_to_dot(&b.graph);
    let report = BlowUpReport { graph: b.graph, exceptional: b.exceptional, cycle, colength };
    Ok(Report::new(&report, text).with_dot(dot))
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Graph { op } => match op {
            GraphOp::Validate { graph } => {
                let g = input::graph(graph)?;
                let report = ValidateReport { graph: &g, leading_minors: g.leading_minors().iter().map(|m| m.to_string()).collect() };
                let text = format!("valid; {}; leading minors [{}]", graph_text(&g), report.leading_minors.join(", "));
                Ok(Report::new(&report, text).with_dot(dot::graph_to_dot(&g)))
            }
            GraphOp::K { graph } => {
                let g = input::graph(graph)?;
                let k = g.canonical_cycle();
                Ok(Report::new(k, qcycle_text(k)))
            }
            GraphOp::Fundamental { graph } => {
                let z = input::graph(graph)?.fundamental_cycle()?;
                Ok(Report::new(&z, z.to_string()))
            }
            GraphOp::Colength { graph, cycle } => {
                let g = input::graph(graph)?;
                let c = g.colength(&input::cycle("cycle", cycle)?)?;
                Ok(Report::new(&c, c.to_string()))
            }
            GraphOp::Rational { graph } => {
                let g = input::graph(graph)?;
                let z = g.fundamental_cycle()?;
                let genus = g.arithmetic_genus(&z)?;
                let rational = g.is_rational()?;
                let text = format!("{} (p_a of fundamental cycle {z} is {genus})", if rational { "rational" } else { "not rational" });
                Ok(Report::new(&RationalReport { rational, fundamental_cycle: z, fundamental_genus: genus }, text))
            }
        },
        Command::Blowup { op } => match op {
            BlowupOp::Free { graph, curve, cycle } => blowup(graph, BlowUpSpec::Free(*curve), cycle.as_ref()),
            BlowupOp::Satellite { graph, edge, cycle } => blowup(graph, BlowUpSpec::Satellite([edge[0], edge[1]]), cycle.as_ref()),
        },
        Command::Adjacency { op } => match op {
            AdjacencyOp::E0 { graph, cycle } => {
                let g = input::graph(graph)?;
                let comps = e_zero_components(&g, &input::cycle("cycle", cycle)?)?;
                let text = format!("{} components {:?}", comps.len(), comps.0);
                Ok(Report::new(&comps, text))
            }
            AdjacencyOp::Report { graph, cycle } => {
                let g = input::graph(graph)?;
                let r = adjacent_below(&g, &input::cycle("cycle", cycle)?)?;
                Ok(Report::new(&r, adjacency_text(&r)).with_dot(dot::adjacency_fan_to_dot(&r)))
            }
            AdjacencyOp::Chain { graph, from, to } => {
                let g = input::graph(graph)?;
                let chain = chain_graph(&g, &input::cycle("from", from)?, &input::cycle("to", to)?)?;
                Ok(Report::new(&chain, chain_text(&chain)).with_dot(dot::graph_chain_to_dot(&chain)))
            }
        },
        Command::Monomial { op } => match op {
            MonomialOp::Closure { ideal } => {
                let c = input::ideal("ideal", ideal)?.newton_closure()?;
                Ok(Report::new(&c, c.to_string()))
            }
            MonomialOp::Ic { ideal } => {
                let b = input::ideal("ideal", ideal)?.is_integrally_closed()?;
                Ok(Report::new(&b, b.to_string()))
            }
            MonomialOp::Colength { ideal } => {
                let c = input::ideal("ideal", ideal)?.colength()?;
                Ok(Report::new(&c, c.to_string()))
            }
            MonomialOp::Adjacent { ideal } => {
                let adj = input::ideal("ideal", ideal)?.adjacent_below()?;
                Ok(Report::new(&adj, ideals_text(&adj)))
            }
            MonomialOp::Chain { from, to } => {
                let start = input::ideal("from", from)?;
                let chain = start.chain_to(&input::ideal("to", to)?)?;
                let text = format!("{} steps\n{}", chain.len(), ideals_text(&chain));
                let dot = dot::monomial_chain_to_dot(&start, &chain);
                Ok(Report::new(&chain, text.trim_end().to_string()).with_dot(dot))
            }
            MonomialOp::Enumerate { colength, max } => {
                let r = enumerate_ic_monomial(*colength, *max)?;
                Ok(Report::new(&r, enumeration_text(&r)))
            }
        },
        Command::Fibercone { op } => match op {
            FiberconeOp::Check { presentation, point } => {
                let pres = input::presentation(presentation)?;
                let b = is_adjacent_point(&pres, &input::point(point)?)?;
                Ok(Report::new(&b, b.to_string()))
            }
            FiberconeOp::Points { presentation, max_prime } => {
                let points = enumerate_points_fq(&input::presentation(presentation)?, *max_prime)?;
                Ok(Report::new(&points, points_text(&points)))
            }
            FiberconeOp::Builtin { name, param, field } => {
                let pres = builtin_presentation(name, *param, input::field(field)?)?;
                let text = serde_json::to_string(&pres).expect("presentation serializes");
                Ok(Report::new(&pres, text))
            }
        },
        Command::Oracle { op } => match op {
            OracleOp::Classify { field, y, ideal, n_max, deg_max, weight_bound } => {
                let bounds = Bounds { n_max: *n_max, deg_max: *deg_max, weight_bound: *weight_bound };
                let cert = classify(input::field(field)?, &input::polynomial("y", y)?, &input::polynomials("ideal", ideal)?, bounds)?;
                Ok(Report::new(&cert, certificate_text(&cert)))
            }
        },
    }
}
