//! Complete ideals adjacent below a given one on a rational dual graph.
//!
//! For an anti-nef cycle `Z`, each adjacent-below complete ideal is one of:
//!
//! * type 1: `Z + Y` on the same graph, where `Y` is supported on a connected
//!   component of `E_0 = {C : Z.C = 0}`, with `Z.Y = 0` and `p_a(Y) = 0`;
//! * type 2: `pi^*(Z) + e` after blowing up a point whose curves all meet `Z`
//!   negatively. Free points on a curve form a one-parameter family and are
//!   reported once per curve.
//!
//! [`chain_graph`] strings such steps together into a composition series
//! between two nested complete ideals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::{adjacent_cycle_via_blowup, BlowUpError, BlowUpSpec};
use crate::graph::{Cycle, DualGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjacencyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    BlowUp(#[from] BlowUpError),
    #[error("target cycle does not dominate the source cycle")]
    NotNested,
    #[error("no legal move: current {current} target {target} on {graph:?}")]
    ChainStuck { graph: Box<DualGraph>, current: Cycle, target: Cycle },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl AdjacencyError {
    pub fn kind(&self) -> &'static str {
        match self {
            AdjacencyError::Graph(e) => e.kind(),
            AdjacencyError::BlowUp(e) => e.kind(),
            AdjacencyError::NotNested => "NotNested",
            AdjacencyError::ChainStuck { .. } => "ChainStuck",
            AdjacencyError::InvariantViolation(_) => "InvariantViolation",
        }
    }
}

/// Connected components of a vertex subset, each sorted, listed by least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentSet(pub Vec<Vec<usize>>);

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.0.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Entry {
    pub component: Vec<usize>,
    pub y: Cycle,
    pub new_cycle: Cycle,
    pub colength: u64,
}

/// A type-1 candidate that failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub component: Vec<usize>,
    pub y: Cycle,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Type1Candidates {
    pub accepted: Vec<Type1Entry>,
    pub rejected: Vec<RejectedCandidate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type2Loci {
    pub free: Vec<usize>,
    pub satellite: Vec<[usize; 2]>,
}

/// Representative of the one-parameter family of free points on `curve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeFamily {
    pub curve: usize,
    pub graph: DualGraph,
    pub new_cycle: Cycle,
    pub colength: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatellitePoint {
    pub edge: [usize; 2],
    pub graph: DualGraph,
    pub new_cycle: Cycle,
    pub colength: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub cycle: Cycle,
    pub colength: u64,
    pub type1: Vec<Type1Entry>,
    pub type2_free: Vec<FreeFamily>,
    pub type2_satellite: Vec<SatellitePoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<RejectedCandidate>,
}

impl AdjacencyReport {
    /// `(type-1 count, free families, satellite points)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.type1.len(), self.type2_free.len(), self.type2_satellite.len())
    }
}

fn check_input(g: &DualGraph, z: &Cycle) -> Result<(), GraphError> {
    g.require_rational()?;
    g.require_anti_nef(z)
}

/// Components of the subgraph spanned by curves orthogonal to `Z`.
pub fn e_zero_components(g: &DualGraph, z: &Cycle) -> Result<ComponentSet, GraphError> {
    g.require_anti_nef(z)?;
    let orthogonal: Vec<bool> = (0..g.num_vertices()).map(|v| g.curve_product(z, v) == 0).collect();
    Ok(components(g, &orthogonal))
}

fn components(g: &DualGraph, member: &[bool]) -> ComponentSet {
    let mut seen = vec![false; g.num_vertices()];
    let mut out = Vec::new();
    for start in 0..g.num_vertices() {
        if !member[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    ComponentSet(out)
}

/// Minimal cycle `Y` supported on `component` with `(Z + Y).C <= 0` along it,
/// grown from the reduced sum of the component.
fn minimal_component_cycle(g: &DualGraph, z: &Cycle, component: &[usize]) -> Result<Cycle, GraphError> {
    let mut start = z.clone();
    for &v in component {
        start.coeffs[v] += 1;
    }
    let grown = g.increment_to_anti_nef(start, |v| component.binary_search(&v).is_ok())?;
    Ok(&grown - z)
}

pub fn type1_adjacent(g: &DualGraph, z: &Cycle) -> Result<Type1Candidates, GraphError> {
    check_input(g, z)?;
    let base = g.colength(z)?;
    let mut out = Type1Candidates::default();
    for component in e_zero_components(g, z)?.0 {
        let y = minimal_component_cycle(g, z, &component)?;
        let new_cycle = z + &y;
        let reject = |reason: String| RejectedCandidate { component: component.clone(), y: y.clone(), reason };
        if !g.is_anti_nef(&new_cycle)? {
            out.rejected.push(reject("Z + Y is not anti-nef".into()));
            continue;
        }
        let zy = g.intersect(z, &y)?;
        let genus = g.arithmetic_genus(&y)?;
        if zy != 0 || genus != 0 {
            out.rejected.push(reject(format!("Z.Y = {zy}, p_a(Y) = {genus}")));
            continue;
        }
        let colength = g.colength(&new_cycle)?;
        if colength != base + 1 {
            out.rejected.push(reject(format!("colength step {base} -> {colength}")));
            continue;
        }
        out.accepted.push(Type1Entry { component, y, new_cycle, colength });
    }
    Ok(out)
}

pub fn type2_loci(g: &DualGraph, z: &Cycle) -> Result<Type2Loci, GraphError> {
    check_input(g, z)?;
    let products = g.curve_products(z)?;
    let free = (0..g.num_vertices()).filter(|&v| products[v] < 0).collect();
    let satellite = g
        .edges()
        .iter()
        .copied()
        .filter(|&[a, b]| products[a] < 0 && products[b] < 0)
        .collect();
    Ok(Type2Loci { free, satellite })
}

pub fn adjacent_below(g: &DualGraph, z: &Cycle) -> Result<AdjacencyReport, AdjacencyError> {
    let colength = g.colength(z)?;
    let type1 = type1_adjacent(g, z)?;
    let loci = type2_loci(g, z)?;
    let mut type2_free = Vec::with_capacity(loci.free.len());
    for &curve in &loci.free {
        let (b, new_cycle) = adjacent_cycle_via_blowup(g, z, BlowUpSpec::Free(curve))?;
        let c = b.graph.colength(&new_cycle)?;
        type2_free.push(FreeFamily { curve, graph: b.graph, new_cycle, colength: c });
    }
    let mut type2_satellite = Vec::with_capacity(loci.satellite.len());
    for &edge in &loci.satellite {
        let (b, new_cycle) = adjacent_cycle_via_blowup(g, z, BlowUpSpec::Satellite(edge))?;
        let c = b.graph.colength(&new_cycle)?;
        type2_satellite.push(SatellitePoint { edge, graph: b.graph, new_cycle, colength: c });
    }
    let all_unit = type1.accepted.iter().map(|e| e.colength)
        .chain(type2_free.iter().map(|f| f.colength))
        .chain(type2_satellite.iter().map(|s| s.colength))
        .all(|c| c == colength + 1);
    if !all_unit {
        return Err(AdjacencyError::InvariantViolation("adjacent ideal with colength step != 1".into()));
    }
    Ok(AdjacencyReport {
        cycle: z.clone(),
        colength,
        type1: type1.accepted,
        type2_free,
        type2_satellite,
        rejected: type1.rejected,
    })
}

/// How a chain step was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMove {
    Type1 { component: Vec<usize>, y: Cycle },
    BlowUp(BlowUpSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub via: ChainMove,
    pub graph: DualGraph,
    pub cycle: Cycle,
    /// Pullback of the target cycle to `graph`.
    pub target: Cycle,
    pub colength: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphChain {
    pub graph: DualGraph,
    pub start: Cycle,
    pub start_colength: u64,
    pub steps: Vec<ChainStep>,
}

impl GraphChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Composition series of complete ideals from `Z_hi` down to `Z_lo`.
///
/// Prefers type-1 moves that stay below the target; otherwise blows up a free
/// point on the lowest curve where the target exceeds the current cycle and
/// the current cycle meets negatively.
pub fn chain_graph(g: &DualGraph, z_hi: &Cycle, z_lo: &Cycle) -> Result<GraphChain, AdjacencyError> {
    let start_colength = g.colength(z_hi)?;
    let end_colength = g.colength(z_lo)?;
    if !z_hi.le(z_lo) {
        return Err(AdjacencyError::NotNested);
    }
    let mut graph = g.clone();
    let mut current = z_hi.clone();
    let mut target = z_lo.clone();
    let mut colength = start_colength;
    let mut steps = Vec::new();
    while colength < end_colength {
        let type1 = type1_adjacent(&graph, &current)?;
        if let Some(entry) = type1.accepted.into_iter().find(|e| e.new_cycle.le(&target)) {
            current = entry.new_cycle;
            colength = entry.colength;
            steps.push(ChainStep {
                via: ChainMove::Type1 { component: entry.component, y: entry.y },
                graph: graph.clone(),
                cycle: current.clone(),
                target: target.clone(),
                colength,
            });
            continue;
        }
        let products = graph.curve_products(&current)?;
        let curve = (0..graph.num_vertices())
            .find(|&v| target.coeffs[v] > current.coeffs[v] && products[v] < 0);
        let Some(curve) = curve else {
            return Err(AdjacencyError::ChainStuck { graph: Box::new(graph), current, target });
        };
        let spec = BlowUpSpec::Free(curve);
        let (b, lifted) = adjacent_cycle_via_blowup(&graph, &current, spec)?;
        target = b.pullback(&target)?;
        current = lifted;
        graph = b.graph;
        colength = graph.colength(&current)?;
        if !current.le(&target) {
            return Err(AdjacencyError::InvariantViolation("step left the target".into()));
        }
        steps.push(ChainStep {
            via: ChainMove::BlowUp(spec),
            graph: graph.clone(),
            cycle: current.clone(),
            target: target.clone(),
            colength,
        });
    }
    if current != target {
        return Err(AdjacencyError::InvariantViolation(format!(
            "colengths agree but {current} != {target}"
        )));
    }
    Ok(GraphChain { graph: g.clone(), start: z_hi.clone(), start_colength, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_zero_examples() {
        let z5 = e_zero_components(&DualGraph::a_n(5), &Cycle::reduced(5)).unwrap();
        assert_eq!(z5, ComponentSet(vec![vec![1, 2, 3]]));
        assert!(e_zero_components(&DualGraph::a_n(2), &Cycle::reduced(2)).unwrap().is_empty());
        let c = e_zero_components(&DualGraph::a_n(4), &Cycle::new(vec![1, 2, 2, 1])).unwrap();
        assert_eq!(c, ComponentSet(vec![vec![0], vec![3]]));
        let err = e_zero_components(&DualGraph::a_n(3), &Cycle::new(vec![1, 0, 0])).unwrap_err();
        assert_eq!(err.kind(), "NotAntiNef");
    }

    #[test]
    fn type1_examples() {
        let t = type1_adjacent(&DualGraph::a_n(4), &Cycle::reduced(4)).unwrap();
        assert_eq!(t.accepted.len(), 1);
        assert_eq!(t.accepted[0].y, Cycle::new(vec![0, 1, 1, 0]));
        assert_eq!(t.accepted[0].new_cycle, Cycle::new(vec![1, 2, 2, 1]));
        assert_eq!(t.accepted[0].colength, 2);
        assert!(type1_adjacent(&DualGraph::a_n(2), &Cycle::reduced(2)).unwrap().accepted.is_empty());
        let t = type1_adjacent(&DualGraph::a_n(5), &Cycle::reduced(5)).unwrap();
        assert_eq!(t.accepted[0].y, Cycle::new(vec![0, 1, 1, 1, 0]));
        assert!(t.rejected.is_empty());
    }

    #[test]
    fn type1_requires_rational_graph() {
        let star = DualGraph::from_parts(&[-2, -3, -3, -3, -3], &[[0, 1], [0, 2], [0, 3], [0, 4]]).unwrap();
        let err = type1_adjacent(&star, &Cycle::new(vec![2, 1, 1, 1, 1])).unwrap_err();
        assert_eq!(err.kind(), "NotRational");
    }

    #[test]
    fn type2_examples() {
        let l = type2_loci(&DualGraph::a_n(4), &Cycle::reduced(4)).unwrap();
        assert_eq!(l, Type2Loci { free: vec![0, 3], satellite: vec![] });
        let l = type2_loci(&DualGraph::a_n(2), &Cycle::reduced(2)).unwrap();
        assert_eq!(l, Type2Loci { free: vec![0, 1], satellite: vec![[0, 1]] });
        let l = type2_loci(&DualGraph::a_n(1), &Cycle::reduced(1)).unwrap();
        assert_eq!(l, Type2Loci { free: vec![0], satellite: vec![] });
    }

    #[test]
    fn report_counts() {
        let cases = [(3, (1, 2, 0)), (2, (0, 2, 1)), (1, (0, 1, 0))];
        for (n, expected) in cases {
            let r = adjacent_below(&DualGraph::a_n(n), &Cycle::reduced(n)).unwrap();
            assert_eq!(r.counts(), expected, "A_{n}");
            assert_eq!(r.colength, 1);
        }
    }

    #[test]
    fn chain_a1_by_blowups() {
        let chain = chain_graph(&DualGraph::a_n(1), &Cycle::new(vec![1]), &Cycle::new(vec![2])).unwrap();
        assert_eq!(chain.len(), 3);
        let colengths: Vec<u64> = chain.steps.iter().map(|s| s.colength).collect();
        assert_eq!(colengths, vec![2, 3, 4]);
        assert_eq!(chain.steps.last().unwrap().cycle, chain.steps.last().unwrap().target);
    }

    #[test]
    fn chain_a4_single_type1_step() {
        let chain = chain_graph(&DualGraph::a_n(4), &Cycle::reduced(4), &Cycle::new(vec![1, 2, 2, 1])).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(matches!(chain.steps[0].via, ChainMove::Type1 { .. }));
    }

    #[test]
    fn chain_trivial_and_not_nested() {
        let g = DualGraph::a_n(3);
        let z = Cycle::new(vec![1, 2, 1]);
        assert!(chain_graph(&g, &z, &z).unwrap().is_empty());
        assert_eq!(chain_graph(&g, &z, &Cycle::reduced(3)).unwrap_err(), AdjacencyError::NotNested);
    }
}
