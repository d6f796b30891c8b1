//! Blowing up a point of the exceptional set.
//!
//! A free point lies on exactly one curve `C`: the new curve `e` meets the
//! strict transform of `C`, whose self-intersection drops by one. A satellite
//! point is the intersection of `C1` and `C2`: the edge between them is
//! replaced by edges to `e` and both self-intersections drop by one. In both
//! cases `e` is appended as the last vertex.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Cycle, DualGraph, GraphError, QCycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowUpError {
    #[error("bad blow-up spec: {0}")]
    BadSpec(String),
    #[error("blown-up graph failed validation: {0}")]
    ValidationFailure(GraphError),
    #[error("point not allowed: curve {curve} has Z.C = {product}, need < 0")]
    PointNotAllowed { curve: usize, product: i64 },
    #[error("invariant violated after blow-up: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl BlowUpError {
    pub fn kind(&self) -> &'static str {
        match self {
            BlowUpError::BadSpec(_) => "BadSpec",
            BlowUpError::ValidationFailure(_) => "ValidationFailure",
            BlowUpError::PointNotAllowed { .. } => "PointNotAllowed",
            BlowUpError::InvariantViolation(_) => "InvariantViolation",
            BlowUpError::Graph(e) => e.kind(),
        }
    }
}

/// Center of a point blow-up. JSON: `{"free": 0}` or `{"satellite": [0, 1]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowUpSpec {
    Free(usize),
    Satellite([usize; 2]),
}

impl BlowUpSpec {
    /// Curves passing through the center.
    pub fn curves(&self) -> Vec<usize> {
        match *self {
            BlowUpSpec::Free(c) => vec![c],
            BlowUpSpec::Satellite([a, b]) => vec![a, b],
        }
    }
}

/// Result of a blow-up together with the data needed to pull cycles back.
#[derive(Debug, Clone)]
pub struct BlowUp {
    pub graph: DualGraph,
    /// Old vertex `i` maps to `embedding[i]` (its strict transform).
    pub embedding: Vec<usize>,
    /// Index of the new exceptional curve.
    pub exceptional: usize,
    pub spec: BlowUpSpec,
}

pub fn blow_up(g: &DualGraph, spec: BlowUpSpec) -> Result<BlowUp, BlowUpError> {
    let n = g.num_vertices();
    let mut self_ints = g.self_ints().to_vec();
    let mut edges: Vec<[usize; 2]> = g.edges().to_vec();
    let e = n;
    match spec {
        BlowUpSpec::Free(c) => {
            if c >= n {
                return Err(BlowUpError::BadSpec(format!("curve {c} does not exist")));
            }
            self_ints[c] -= 1;
            edges.push([c, e]);
        }
        BlowUpSpec::Satellite([a, b]) => {
            if a >= n || b >= n || !g.has_edge(a, b) {
                return Err(BlowUpError::BadSpec(format!("edge [{a}, {b}] does not exist")));
            }
            let key = [a.min(b), a.max(b)];
            edges.retain(|&x| x != key);
            self_ints[a] -= 1;
            self_ints[b] -= 1;
            edges.push([a, e]);
            edges.push([b, e]);
        }
    }
    self_ints.push(-1);
    let graph = DualGraph::from_parts(&self_ints, &edges).map_err(BlowUpError::ValidationFailure)?;
    Ok(BlowUp { graph, embedding: (0..n).collect(), exceptional: e, spec })
}

impl BlowUp {
    fn source_len(&self) -> usize {
        self.embedding.len()
    }

    fn check_source(&self, len: usize) -> Result<(), BlowUpError> {
        if len != self.source_len() {
            return Err(GraphError::GraphMismatch { expected: self.source_len(), found: len }.into());
        }
        Ok(())
    }

    /// Total transform of an integral cycle.
    pub fn pullback(&self, z: &Cycle) -> Result<Cycle, BlowUpError> {
        self.check_source(z.len())?;
        let mut coeffs = vec![0; self.graph.num_vertices()];
        for (i, &j) in self.embedding.iter().enumerate() {
            coeffs[j] = z.coeffs[i];
        }
        coeffs[self.exceptional] = self.spec.curves().iter().map(|&c| z.coeffs[c]).sum();
        Ok(Cycle::new(coeffs))
    }

    /// Total transform of a rational cycle.
    pub fn pullback_q(&self, z: &QCycle) -> Result<QCycle, BlowUpError> {
        self.check_source(z.coeffs.len())?;
        let mut coeffs = vec![BigRational::from_integer(BigInt::from(0)); self.graph.num_vertices()];
        for (i, &j) in self.embedding.iter().enumerate() {
            coeffs[j] = z.coeffs[i].clone();
        }
        coeffs[self.exceptional] = self.spec.curves().iter().map(|&c| z.coeffs[c].clone()).sum();
        Ok(QCycle { coeffs })
    }

    /// The new curve as a cycle on the blown-up graph.
    pub fn exceptional_cycle(&self) -> Cycle {
        Cycle::unit(self.graph.num_vertices(), self.exceptional)
    }
}

/// Cycle `pi^*(Z) + e` of the adjacent complete ideal obtained by blowing up
/// a point through which every curve meets `Z` negatively.
pub fn adjacent_cycle_via_blowup(
    g: &DualGraph,
    z: &Cycle,
    spec: BlowUpSpec,
) -> Result<(BlowUp, Cycle), BlowUpError> {
    g.require_rational()?;
    g.require_anti_nef(z)?;
    let base_colength = g.colength(z)?;
    for curve in spec.curves() {
        if curve >= g.num_vertices() {
            return Err(BlowUpError::BadSpec(format!("curve {curve} does not exist")));
        }
        let product = g.curve_product(z, curve);
        if product >= 0 {
            return Err(BlowUpError::PointNotAllowed { curve, product });
        }
    }
    let b = blow_up(g, spec)?;
    let lifted = &b.pullback(z)? + &b.exceptional_cycle();
    if !b.graph.is_anti_nef(&lifted)? {
        return Err(BlowUpError::InvariantViolation(format!("{lifted} is not anti-nef")));
    }
    let colength = b.graph.colength(&lifted)?;
    if colength != base_colength + 1 {
        return Err(BlowUpError::InvariantViolation(format!(
            "colength went from {base_colength} to {colength}"
        )));
    }
    Ok((b, lifted))
}
