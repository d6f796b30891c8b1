//! Intersection calculus on weighted dual graphs of exceptional sets.
//!
//! A [`DualGraph`] records, for every exceptional curve, its self-intersection
//! number, and an edge for every pair of curves meeting in a point. All curves
//! are rational. Integral cycles ([`Cycle`]) and rational cycles ([`QCycle`])
//! are coefficient vectors indexed by the vertices of one graph; the
//! intersection pairing is the form given by the intersection matrix.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Upper bound on increments performed by the Laufer-style loops.
pub const ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("malformed edge [{a}, {b}]: {reason}")]
    MalformedEdge { a: usize, b: usize, reason: String },
    #[error("curve {vertex} has genus {genus}; only rational curves are supported")]
    NonZeroGenus { vertex: usize, genus: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("intersection matrix is not negative definite (leading minor of order {order} has the wrong sign)")]
    NotNegativeDefinite { order: usize },
    #[error("cycle has {found} coefficients but the graph has {expected} vertices")]
    GraphMismatch { expected: usize, found: usize },
    #[error("cycle has a negative coefficient")]
    NotEffective,
    #[error("cycle is zero")]
    ZeroCycle,
    #[error("cycle is not anti-nef: it meets curve {curve} with product {product}")]
    NotAntiNef { curve: usize, product: i64 },
    #[error("graph is not rational: p_a of the fundamental cycle is {genus}")]
    NotRational { genus: i64 },
    #[error("increment loop exceeded {0} iterations")]
    NonTerminating(usize),
    #[error("Y^2 + K.Y = {0} is not an even integer")]
    ParityViolation(String),
    #[error("integer overflow in intersection arithmetic")]
    Overflow,
}

impl GraphError {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphError::Empty => "Empty",
            GraphError::MalformedEdge { .. } => "MalformedEdge",
            GraphError::NonZeroGenus { .. } => "NonZeroGenus",
            GraphError::Disconnected => "Disconnected",
            GraphError::NotNegativeDefinite { .. } => "NotNegativeDefinite",
            GraphError::GraphMismatch { .. } => "GraphMismatch",
            GraphError::NotEffective => "NotEffective",
            GraphError::ZeroCycle => "ZeroCycle",
            GraphError::NotAntiNef { .. } => "NotAntiNef",
            GraphError::NotRational { .. } => "NotRational",
            GraphError::NonTerminating(_) => "NonTerminating",
            GraphError::ParityViolation(_) => "ParityViolation",
            GraphError::Overflow => "Overflow",
        }
    }
}

/// Unvalidated graph as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub self_int: i64,
    #[serde(default, skip_serializing_if = "is_zero_genus")]
    pub genus: u32,
}

fn is_zero_genus(g: &u32) -> bool {
    *g == 0
}

/// Validated dual graph: connected, simple, with negative definite
/// intersection matrix.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct DualGraph {
    self_ints: Vec<i64>,
    edges: Vec<[usize; 2]>,
    neighbors: Vec<Vec<usize>>,
    minors: Vec<BigInt>,
    canonical: QCycle,
    // K.C_i for every curve, kept so K.Y costs one dot product
    canonical_products: Vec<BigRational>,
    fundamental: OnceLock<Result<Cycle, GraphError>>,
}

impl fmt::Debug for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DualGraph")
            .field("self_ints", &self.self_ints)
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for DualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.self_ints == other.self_ints && self.edges == other.edges
    }
}

impl Eq for DualGraph {}

impl TryFrom<RawGraph> for DualGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        validate_graph(&raw)
    }
}

impl From<DualGraph> for RawGraph {
    fn from(g: DualGraph) -> Self {
        g.to_raw()
    }
}

/// Validates a raw graph: edges, rationality of the curves, connectivity and
/// negative definiteness (by leading principal minors).
pub fn validate_graph(raw: &RawGraph) -> Result<DualGraph, GraphError> {
    let n = raw.vertices.len();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    for (vertex, v) in raw.vertices.iter().enumerate() {
        if v.genus != 0 {
            return Err(GraphError::NonZeroGenus { vertex, genus: v.genus });
        }
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for &[a, b] in &raw.edges {
        let malformed = |reason: &str| GraphError::MalformedEdge { a, b, reason: reason.to_string() };
        if a >= n || b >= n {
            return Err(malformed("vertex index out of range"));
        }
        if a == b {
            return Err(malformed("self-loop"));
        }
        let e = [a.min(b), a.max(b)];
        if edges.contains(&e) {
            return Err(malformed("multi-edge"));
        }
        edges.push(e);
    }
    edges.sort_unstable();

    let mut neighbors = vec![Vec::new(); n];
    for &[a, b] in &edges {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }

    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &neighbors[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GraphError::Disconnected);
    }

    let self_ints: Vec<i64> = raw.vertices.iter().map(|v| v.self_int).collect();
    let matrix = intersection_matrix(&self_ints, &edges);
    let minors = leading_minors(&matrix);
    for (k, det) in minors.iter().enumerate() {
        let order = k + 1;
        let signed = if order % 2 == 1 { -det.clone() } else { det.clone() };
        if !signed.is_positive() {
            return Err(GraphError::NotNegativeDefinite { order });
        }
    }
    if minors.len() < n {
        return Err(GraphError::NotNegativeDefinite { order: minors.len() + 1 });
    }

    let rhs: Vec<BigRational> = self_ints
        .iter()
        .map(|&s| BigRational::from_integer(BigInt::from(-s - 2)))
        .collect();
    let canonical = QCycle { coeffs: solve_rational(&matrix, &rhs) };
    let canonical_products = (0..n)
        .map(|i| {
            let mut acc = &canonical.coeffs[i] * BigInt::from(self_ints[i]);
            for &j in &neighbors[i] {
                acc += &canonical.coeffs[j];
            }
            acc
        })
        .collect();

    Ok(DualGraph {
        self_ints,
        edges,
        neighbors,
        minors,
        canonical,
        canonical_products,
        fundamental: OnceLock::new(),
    })
}

fn intersection_matrix(self_ints: &[i64], edges: &[[usize; 2]]) -> Vec<Vec<BigInt>> {
    let n = self_ints.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, &s) in self_ints.iter().enumerate() {
        m[i][i] = BigInt::from(s);
    }
    for &[a, b] in edges {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    m
}

/// Leading principal minors by fraction-free (Bareiss) elimination. Stops
/// early at the first vanishing minor, so the result may be shorter than the
/// matrix.
fn leading_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Solves `m x = rhs` exactly; `m` must be invertible.
fn solve_rational(m: &[Vec<BigInt>], rhs: &[BigRational]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut out: Vec<BigRational> =
                row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            out.push(r.clone());
            out
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("intersection matrix is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

impl DualGraph {
    /// Builds and validates a graph from self-intersections and edges.
    pub fn from_parts(self_ints: &[i64], edges: &[[usize; 2]]) -> Result<Self, GraphError> {
        validate_graph(&RawGraph {
            vertices: self_ints.iter().map(|&s| RawVertex { self_int: s, genus: 0 }).collect(),
            edges: edges.to_vec(),
        })
    }

    /// Path graph `v0 - v1 - ... ` with the given self-intersections.
    pub fn chain(self_ints: &[i64]) -> Result<Self, GraphError> {
        let edges: Vec<[usize; 2]> = (1..self_ints.len()).map(|i| [i - 1, i]).collect();
        Self::from_parts(self_ints, &edges)
    }

    /// The A_n configuration: a chain of `n` curves of self-intersection -2.
    pub fn a_n(n: usize) -> Self {
        Self::chain(&vec![-2; n]).expect("A_n is negative definite")
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.self_ints.iter().map(|&s| RawVertex { self_int: s, genus: 0 }).collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.self_ints.len()
    }

    pub fn self_ints(&self) -> &[i64] {
        &self.self_ints
    }

    pub fn self_int(&self, v: usize) -> i64 {
        self.self_ints[v]
    }

    /// Edges as sorted pairs `[a, b]` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.num_vertices() && self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Leading principal minors det(M_1), ..., det(M_n) of the intersection matrix.
    pub fn leading_minors(&self) -> &[BigInt] {
        &self.minors
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.self_ints[i];
            for &j in &self.neighbors[i] {
                row[j] = 1;
            }
        }
        m
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<(), GraphError> {
        if len != self.num_vertices() {
            return Err(GraphError::GraphMismatch { expected: self.num_vertices(), found: len });
        }
        Ok(())
    }

    /// `Z . C_v` for the curve `v`.
    pub fn curve_product(&self, z: &Cycle, v: usize) -> i64 {
        let mut acc = z.coeffs[v] * self.self_ints[v];
        for &w in &self.neighbors[v] {
            acc += z.coeffs[w];
        }
        acc
    }

    /// The vector `(Z . C_0, ..., Z . C_{n-1})`.
    pub fn curve_products(&self, z: &Cycle) -> Result<Vec<i64>, GraphError> {
        self.check_len(z.len())?;
        Ok((0..self.num_vertices()).map(|v| self.curve_product(z, v)).collect())
    }

    /// Intersection number of two integral cycles.
    pub fn intersect(&self, z: &Cycle, w: &Cycle) -> Result<i64, GraphError> {
        self.check_len(z.len())?;
        self.check_len(w.len())?;
        let mut acc: i128 = 0;
        for v in 0..self.num_vertices() {
            let p = i128::from(z.coeffs[v]) * i128::from(self.self_ints[v])
                + self.neighbors[v].iter().map(|&u| i128::from(z.coeffs[u])).sum::<i128>();
            acc += p * i128::from(w.coeffs[v]);
        }
        i64::try_from(acc).map_err(|_| GraphError::Overflow)
    }

    /// Intersection number of arbitrary (integral or rational) cycles.
    pub fn intersect_q<A: CycleCoeffs, B: CycleCoeffs>(
        &self,
        z: &A,
        w: &B,
    ) -> Result<BigRational, GraphError> {
        self.check_len(z.len())?;
        self.check_len(w.len())?;
        let mut acc = BigRational::zero();
        for v in 0..self.num_vertices() {
            let wv = w.coeff_q(v);
            if wv.is_zero() {
                continue;
            }
            let mut p = z.coeff_q(v) * BigInt::from(self.self_ints[v]);
            for &u in &self.neighbors[v] {
                p += z.coeff_q(u);
            }
            acc += p * wv;
        }
        Ok(acc)
    }

    /// The canonical cycle K, the unique rational cycle with
    /// `K . C = -C^2 - 2` for every curve.
    pub fn canonical_cycle(&self) -> &QCycle {
        &self.canonical
    }

    /// `K . Y` for an integral cycle.
    pub fn canonical_product(&self, y: &Cycle) -> Result<BigRational, GraphError> {
        self.check_len(y.len())?;
        Ok(self
            .canonical_products
            .iter()
            .zip(&y.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| k * BigInt::from(c))
            .sum())
    }

    /// The fundamental cycle: the smallest nonzero effective anti-nef cycle.
    pub fn fundamental_cycle(&self) -> Result<Cycle, GraphError> {
        self.fundamental
            .get_or_init(|| {
                let start = Cycle::unit(self.num_vertices(), 0);
                self.increment_to_anti_nef(start, |_| true)
            })
            .clone()
    }

    pub fn is_anti_nef(&self, z: &Cycle) -> Result<bool, GraphError> {
        self.check_len(z.len())?;
        Ok((0..self.num_vertices()).all(|v| self.curve_product(z, v) <= 0))
    }

    pub(crate) fn require_anti_nef(&self, z: &Cycle) -> Result<(), GraphError> {
        self.check_len(z.len())?;
        if !z.is_effective() {
            return Err(GraphError::NotEffective);
        }
        for v in 0..self.num_vertices() {
            let product = self.curve_product(z, v);
            if product > 0 {
                return Err(GraphError::NotAntiNef { curve: v, product });
            }
        }
        Ok(())
    }

    /// Smallest anti-nef cycle dominating `z` componentwise.
    pub fn anti_nef_closure(&self, z: &Cycle) -> Result<Cycle, GraphError> {
        self.check_len(z.len())?;
        if !z.is_effective() {
            return Err(GraphError::NotEffective);
        }
        self.increment_to_anti_nef(z.clone(), |_| true)
    }

    /// Repeatedly adds the lowest-index allowed curve meeting `z` positively.
    pub(crate) fn increment_to_anti_nef(
        &self,
        mut z: Cycle,
        allowed: impl Fn(usize) -> bool,
    ) -> Result<Cycle, GraphError> {
        for _ in 0..ITERATION_CAP {
            match (0..self.num_vertices()).find(|&v| allowed(v) && self.curve_product(&z, v) > 0) {
                Some(v) => z.coeffs[v] += 1,
                None => return Ok(z),
            }
        }
        Err(GraphError::NonTerminating(ITERATION_CAP))
    }

    /// Arithmetic genus `p_a(Y) = (Y^2 + K.Y)/2 + 1`.
    pub fn arithmetic_genus(&self, y: &Cycle) -> Result<i64, GraphError> {
        let twice = BigRational::from_integer(BigInt::from(self.intersect(y, y)?))
            + self.canonical_product(y)?;
        if !twice.is_integer() {
            return Err(GraphError::ParityViolation(twice.to_string()));
        }
        let twice = twice.to_integer();
        if (&twice % 2u32) != BigInt::zero() {
            return Err(GraphError::ParityViolation(twice.to_string()));
        }
        (twice / BigInt::from(2) + BigInt::one()).to_i64().ok_or(GraphError::Overflow)
    }

    /// Rational configuration test: `p_a(Z_f) = 0`.
    pub fn is_rational(&self) -> Result<bool, GraphError> {
        Ok(self.arithmetic_genus(&self.fundamental_cycle()?)? == 0)
    }

    pub(crate) fn require_rational(&self) -> Result<(), GraphError> {
        let genus = self.arithmetic_genus(&self.fundamental_cycle()?)?;
        if genus != 0 {
            return Err(GraphError::NotRational { genus });
        }
        Ok(())
    }

    /// Colength of the complete ideal attached to an anti-nef cycle on a
    /// rational graph, `-(Z^2 + K.Z)/2`.
    pub fn colength(&self, z: &Cycle) -> Result<u64, GraphError> {
        self.require_rational()?;
        self.require_anti_nef(z)?;
        if z.is_zero() {
            return Err(GraphError::ZeroCycle);
        }
        self.riemann_roch(z)
    }

    /// `-(Z^2 + K.Z)/2` without preconditions beyond integrality.
    pub(crate) fn riemann_roch(&self, z: &Cycle) -> Result<u64, GraphError> {
        // -(Z^2 + K.Z)/2 = 1 - p_a(Z)
        let genus = self.arithmetic_genus(z)?;
        u64::try_from(1 - genus).map_err(|_| GraphError::Overflow)
    }
}

/// Read access to cycle coefficients as exact rationals.
pub trait CycleCoeffs {
    fn len(&self) -> usize;
    fn coeff_q(&self, i: usize) -> BigRational;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Integral cycle on a dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    pub coeffs: Vec<i64>,
}

impl Cycle {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Cycle { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Cycle { coeffs: vec![0; n] }
    }

    /// The single curve `C_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[i] = 1;
        c
    }

    /// Sum of all curves with coefficient 1.
    pub fn reduced(n: usize) -> Self {
        Cycle { coeffs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_nonzero_effective(&self) -> bool {
        self.is_effective() && !self.is_zero()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Cycle) -> bool {
        self.len() == other.len() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }
}

impl std::ops::Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycles on different graphs");
        Cycle { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl std::ops::Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycles on different graphs");
        Cycle { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl CycleCoeffs for Cycle {
    fn len(&self) -> usize {
        self.coeffs.len()
    }
    fn coeff_q(&self, i: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.coeffs[i]))
    }
}

/// Rational cycle; serialized with coefficients as strings such as `"-1/3"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCycle {
    pub coeffs: Vec<BigRational>,
}

impl QCycle {
    pub fn zero(n: usize) -> Self {
        QCycle { coeffs: vec![BigRational::zero(); n] }
    }

    pub fn from_cycle(c: &Cycle) -> Self {
        QCycle { coeffs: (0..c.len()).map(|i| c.coeff_q(i)).collect() }
    }
}

impl CycleCoeffs for QCycle {
    fn len(&self) -> usize {
        self.coeffs.len()
    }
    fn coeff_q(&self, i: usize) -> BigRational {
        self.coeffs[i].clone()
    }
}

#[derive(Serialize, Deserialize)]
struct RawQCycle {
    coeffs: Vec<String>,
}

impl Serialize for QCycle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawQCycle { coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QCycle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawQCycle::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(QCycle { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn star() -> DualGraph {
        DualGraph::from_parts(&[-2, -3, -3, -3, -3], &[[0, 1], [0, 2], [0, 3], [0, 4]]).unwrap()
    }

    #[test]
    fn a3_minors_alternate() {
        let g = DualGraph::a_n(3);
        let minors: Vec<i64> = g.leading_minors().iter().map(|m| m.to_i64().unwrap()).collect();
        assert_eq!(minors, vec![-2, 3, -4]);
    }

    #[test]
    fn single_minus_one_curve_is_valid() {
        let g = DualGraph::from_parts(&[-1], &[]).unwrap();
        assert_eq!(g.num_vertices(), 1);
    }

    #[test]
    fn triangle_is_not_negative_definite() {
        let err = DualGraph::from_parts(&[-2, -2, -2], &[[0, 1], [1, 2], [0, 2]]).unwrap_err();
        assert!(matches!(err, GraphError::NotNegativeDefinite { .. }));
        let m = [[-2i64, 1, 1], [1, -2, 1], [1, 1, -2]];
        let form: i64 = m.iter().flatten().sum();
        assert_eq!(form, 0);
    }

    #[test]
    fn malformed_edges_rejected() {
        for edges in [vec![[0, 0]], vec![[0, 1], [1, 0]], vec![[0, 5]]] {
            let err = DualGraph::from_parts(&[-2, -2], &edges).unwrap_err();
            assert_eq!(err.kind(), "MalformedEdge");
        }
    }

    #[test]
    fn disconnected_and_empty_rejected() {
        assert_eq!(DualGraph::from_parts(&[-2, -2], &[]).unwrap_err(), GraphError::Disconnected);
        assert_eq!(DualGraph::from_parts(&[], &[]).unwrap_err(), GraphError::Empty);
    }

    #[test]
    fn nonzero_genus_rejected() {
        let raw: RawGraph =
            serde_json::from_str(r#"{"vertices":[{"self_int":-2,"genus":1}],"edges":[]}"#).unwrap();
        assert_eq!(validate_graph(&raw).unwrap_err(), GraphError::NonZeroGenus { vertex: 0, genus: 1 });
    }

    #[test]
    fn intersect_examples() {
        let a3 = DualGraph::a_n(3);
        assert_eq!(a3.intersect(&Cycle::reduced(3), &Cycle::unit(3, 0)).unwrap(), -1);
        assert_eq!(a3.intersect(&Cycle::new(vec![2, -1, 5]), &Cycle::zero(3)).unwrap(), 0);
        let a4 = DualGraph::a_n(4);
        assert_eq!(a4.intersect(&Cycle::reduced(4), &Cycle::unit(4, 1)).unwrap(), 0);
        assert!(matches!(
            a4.intersect(&Cycle::reduced(3), &Cycle::reduced(4)),
            Err(GraphError::GraphMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn canonical_cycle_examples() {
        assert_eq!(DualGraph::a_n(4).canonical_cycle(), &QCycle::zero(4));
        let g = DualGraph::from_parts(&[-3], &[]).unwrap();
        assert_eq!(g.canonical_cycle().coeffs, vec![q(-1, 3)]);
        let g = DualGraph::from_parts(&[-3, -1], &[[0, 1]]).unwrap();
        assert_eq!(g.canonical_cycle().coeffs, vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn fundamental_cycle_examples() {
        for n in 1..6 {
            assert_eq!(DualGraph::a_n(n).fundamental_cycle().unwrap(), Cycle::reduced(n));
        }
        for s in [-1, -2, -7] {
            let g = DualGraph::from_parts(&[s], &[]).unwrap();
            assert_eq!(g.fundamental_cycle().unwrap(), Cycle::new(vec![1]));
        }
        assert_eq!(star().fundamental_cycle().unwrap(), Cycle::new(vec![2, 1, 1, 1, 1]));
    }

    #[test]
    fn anti_nef_examples() {
        let a3 = DualGraph::a_n(3);
        assert!(a3.is_anti_nef(&Cycle::reduced(3)).unwrap());
        assert!(!a3.is_anti_nef(&Cycle::new(vec![1, 0, 0])).unwrap());
        assert!(a3.is_anti_nef(&Cycle::zero(3)).unwrap());
    }

    #[test]
    fn closure_examples() {
        let a3 = DualGraph::a_n(3);
        assert_eq!(a3.anti_nef_closure(&Cycle::new(vec![1, 0, 0])).unwrap(), Cycle::reduced(3));
        let z = Cycle::new(vec![1, 2, 1]);
        assert_eq!(a3.anti_nef_closure(&z).unwrap(), z);
        let a1 = DualGraph::a_n(1);
        assert_eq!(a1.anti_nef_closure(&Cycle::new(vec![1])).unwrap(), Cycle::new(vec![1]));
        assert_eq!(a3.anti_nef_closure(&Cycle::new(vec![-1, 0, 0])), Err(GraphError::NotEffective));
    }

    #[test]
    fn genus_examples() {
        let a3 = DualGraph::a_n(3);
        assert_eq!(a3.arithmetic_genus(&Cycle::reduced(3)).unwrap(), 0);
        assert_eq!(a3.arithmetic_genus(&Cycle::zero(3)).unwrap(), 1);
        let s = star();
        assert_eq!(s.arithmetic_genus(&Cycle::new(vec![2, 1, 1, 1, 1])).unwrap(), 1);
    }

    #[test]
    fn colength_examples() {
        for n in 1..6 {
            assert_eq!(DualGraph::a_n(n).colength(&Cycle::reduced(n)).unwrap(), 1);
        }
        assert_eq!(DualGraph::a_n(1).colength(&Cycle::new(vec![2])).unwrap(), 4);
        assert_eq!(DualGraph::a_n(4).colength(&Cycle::new(vec![1, 2, 2, 1])).unwrap(), 2);
    }

    #[test]
    fn colength_errors() {
        let a3 = DualGraph::a_n(3);
        assert!(matches!(a3.colength(&Cycle::new(vec![1, 0, 0])), Err(GraphError::NotAntiNef { curve: 1, .. })));
        assert_eq!(a3.colength(&Cycle::zero(3)), Err(GraphError::ZeroCycle));
        let s = star();
        assert_eq!(s.colength(&Cycle::new(vec![2, 1, 1, 1, 1])), Err(GraphError::NotRational { genus: 1 }));
    }

    #[test]
    fn rationality_examples() {
        for n in 1..8 {
            assert!(DualGraph::a_n(n).is_rational().unwrap());
        }
        for s in -6..=-1 {
            assert!(DualGraph::from_parts(&[s], &[]).unwrap().is_rational().unwrap());
        }
        assert!(!star().is_rational().unwrap());
    }

    #[test]
    fn json_shapes() {
        let g: DualGraph =
            serde_json::from_str(r#"{"vertices":[{"self_int":-2},{"self_int":-2}],"edges":[[1,0]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"vertices":[{"self_int":-2},{"self_int":-2}],"edges":[[0,1]]}"#
        );
        let bad = serde_json::from_str::<DualGraph>(r#"{"vertices":[{"self_int":1}],"edges":[]}"#);
        assert!(bad.is_err());
        let c: Cycle = serde_json::from_str(r#"{"coeffs":[1,1,1]}"#).unwrap();
        assert_eq!(c, Cycle::reduced(3));
        let k = DualGraph::from_parts(&[-3], &[]).unwrap().canonical_cycle().clone();
        let text = serde_json::to_string(&k).unwrap();
        assert_eq!(text, r#"{"coeffs":["-1/3"]}"#);
        assert_eq!(serde_json::from_str::<QCycle>(&text).unwrap(), k);
    }
}
