//! Monomial ideals of finite colength in `k[[x_1, ..., x_d]]`.
//!
//! The integral closure of a monomial ideal is the monomial ideal spanned by
//! the lattice points of its Newton polyhedron `conv(exponents) + R^d_{>=0}`.
//! Removing one Newton vertex from a complete monomial ideal gives a complete
//! ideal of colength one more, which makes composition series by complete
//! ideals constructive.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod newton;

pub use newton::in_newton_polyhedron;

pub type Exponent = Vec<u32>;

/// Largest colength accepted by [`enumerate_ic_monomial`] unless overridden.
pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("ideal needs at least one generator")]
    Empty,
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("exponent vector of length {found} in dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("ideal is not integrally closed")]
    NotIntegrallyClosed,
    #[error("ideals are not nested")]
    NotNested,
    #[error("{0:?} is not a minimal generator")]
    NotAGenerator(Exponent),
    #[error("bad example parameters: {0}")]
    BadExample(String),
    #[error("colength {n} exceeds enumeration bound {max}")]
    ColengthTooLarge { n: usize, max: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl MonomialError {
    pub fn kind(&self) -> &'static str {
        match self {
            MonomialError::Empty => "Empty",
            MonomialError::BadDimension(_) => "BadDimension",
            MonomialError::DimensionMismatch { .. } => "DimensionMismatch",
            MonomialError::NotPrimary => "NotPrimary",
            MonomialError::NotIntegrallyClosed => "NotIntegrallyClosed",
            MonomialError::NotNested => "NotNested",
            MonomialError::NotAGenerator(_) => "NotAGenerator",
            MonomialError::BadExample(_) => "BadExample",
            MonomialError::ColengthTooLarge { .. } => "ColengthTooLarge",
            MonomialError::InvariantViolation(_) => "InvariantViolation",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawIdeal {
    dim: usize,
    gens: Vec<Exponent>,
}

/// Monomial ideal stored by its minimal generators, sorted lexicographically.
///
/// JSON: `{"dim":2,"gens":[[3,0],[0,2]]}`; non-minimal input is minimalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal")]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Exponent>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = MonomialError;

    fn try_from(raw: RawIdeal) -> Result<Self, MonomialError> {
        MonomialIdeal::new(raw.dim, raw.gens)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Divisibility-minimal subset of `gens`, sorted and deduplicated.
pub fn minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| !gens.iter().enumerate().any(|(j, h)| i != j && divides(h, g)))
        .collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

/// All exponent vectors of total degree `n` in `dim` variables.
fn degree_vectors(dim: usize, n: u32) -> Vec<Exponent> {
    fn rec(dim: usize, left: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(dim, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, n, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Calls `f` on every point of the box `[0, bounds_0) x ... x [0, bounds_{d-1})`.
fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let mut p = vec![0u32; bounds.len()];
    loop {
        f(&p);
        let mut i = 0;
        loop {
            if i == p.len() {
                return;
            }
            p[i] += 1;
            if p[i] < bounds[i] {
                break;
            }
            p[i] = 0;
            i += 1;
        }
    }
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: Vec<Exponent>) -> Result<Self, MonomialError> {
        if dim < 2 {
            return Err(MonomialError::BadDimension(dim));
        }
        if gens.is_empty() {
            return Err(MonomialError::Empty);
        }
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(MonomialError::DimensionMismatch { expected: dim, found: g.len() });
        }
        Ok(MonomialIdeal { dim, gens: minimalize(gens) })
    }

    /// The power `m^n` of the maximal ideal.
    pub fn maximal_power(dim: usize, n: u32) -> Result<Self, MonomialError> {
        Self::new(dim, degree_vectors(dim, n))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    fn check_dim(&self, len: usize) -> Result<(), MonomialError> {
        if len != self.dim {
            return Err(MonomialError::DimensionMismatch { expected: self.dim, found: len });
        }
        Ok(())
    }

    /// Whether the monomial `x^v` lies in the ideal.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, v))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        self.dim == other.dim && other.gens.iter().all(|g| self.contains(g))
    }

    /// Exponents of the pure powers `x_i^{a_i}` in the ideal, if every axis has one.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        (0..self.dim)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g[i])
                    .min()
            })
            .collect()
    }

    pub fn is_primary(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    fn bounds(&self) -> Result<Vec<u32>, MonomialError> {
        self.pure_power_bounds().ok_or(MonomialError::NotPrimary)
    }

    /// Exponents of the standard monomials (those outside the ideal).
    pub fn staircase(&self) -> Result<Vec<Exponent>, MonomialError> {
        let bounds = self.bounds()?;
        let mut out = Vec::new();
        for_each_in_box(&bounds, |p| {
            if !self.contains(p) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        Ok(out)
    }

    /// `l(A/I)`: the number of standard monomials.
    pub fn colength(&self) -> Result<u64, MonomialError> {
        let bounds = self.bounds()?;
        let mut count = 0u64;
        for_each_in_box(&bounds, |p| {
            if !self.contains(p) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Largest total degree of a minimal generator.
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self, MonomialError> {
        self.check_dim(other.dim)?;
        Self::new(self.dim, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self, MonomialError> {
        self.check_dim(other.dim)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::new(self.dim, gens)
    }

    /// Integral closure via lattice points of the Newton polyhedron.
    pub fn newton_closure(&self) -> Result<Self, MonomialError> {
        let mut gens = self.gens.clone();
        gens.extend(
            self.staircase()?
                .into_iter()
                .filter(|p| in_newton_polyhedron(&self.gens, p)),
        );
        Self::new(self.dim, gens)
    }

    pub fn is_integrally_closed(&self) -> Result<bool, MonomialError> {
        Ok(!self.staircase()?.iter().any(|p| in_newton_polyhedron(&self.gens, p)))
    }

    /// Minimal generators that are vertices of the Newton polyhedron.
    pub fn np_vertices(&self) -> Result<Vec<Exponent>, MonomialError> {
        self.bounds()?;
        Ok(self
            .gens
            .iter()
            .enumerate()
            .filter(|(i, g)| {
                let others: Vec<Exponent> = self
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, h)| h.clone())
                    .collect();
                others.is_empty() || !in_newton_polyhedron(&others, g)
            })
            .map(|(_, g)| g.clone())
            .collect())
    }

    /// The ideal spanned by every monomial of `self` except `x^v`, where `v`
    /// is a minimal generator.
    pub fn without_generator(&self, v: &[u32]) -> Result<Self, MonomialError> {
        self.check_dim(v.len())?;
        if !self.gens.iter().any(|g| g == v) {
            return Err(MonomialError::NotAGenerator(v.to_vec()));
        }
        let mut gens: Vec<Exponent> = self.gens.iter().filter(|g| g.as_slice() != v).cloned().collect();
        for i in 0..self.dim {
            let mut w = v.to_vec();
            w[i] += 1;
            gens.push(w);
        }
        Self::new(self.dim, gens)
    }

    fn require_closed_primary(&self) -> Result<u64, MonomialError> {
        let colength = self.colength()?;
        if !self.is_integrally_closed()? {
            return Err(MonomialError::NotIntegrallyClosed);
        }
        Ok(colength)
    }

    fn remove_vertex_checked(&self, v: &[u32], colength: u64) -> Result<Self, MonomialError> {
        let next = self.without_generator(v)?;
        let c = next.colength()?;
        if c != colength + 1 || !next.is_integrally_closed()? {
            return Err(MonomialError::InvariantViolation(format!(
                "removing {v:?} from {self} gave colength {c}"
            )));
        }
        Ok(next)
    }

    /// Complete ideals adjacent below: one per Newton vertex.
    pub fn adjacent_below(&self) -> Result<Vec<Self>, MonomialError> {
        let colength = self.require_closed_primary()?;
        self.np_vertices()?
            .iter()
            .map(|v| self.remove_vertex_checked(v, colength))
            .collect()
    }

    /// Composition series `self = I_0 ⊋ I_1 ⊋ ... ⊋ I_t = target` through
    /// complete ideals, removing the lexicographically smallest Newton vertex
    /// outside `target` at each step. The returned list excludes `self`.
    pub fn chain_to(&self, target: &MonomialIdeal) -> Result<Vec<Self>, MonomialError> {
        self.check_dim(target.dim)?;
        let mut colength = self.require_closed_primary()?;
        let end = target.require_closed_primary()?;
        if !self.contains_ideal(target) {
            return Err(MonomialError::NotNested);
        }
        let mut current = self.clone();
        let mut steps = Vec::new();
        while colength < end {
            let vertex = current
                .np_vertices()?
                .into_iter()
                .find(|v| !target.contains(v))
                .ok_or_else(|| MonomialError::InvariantViolation(format!("all vertices of {current} lie in {target}")))?;
            current = current.remove_vertex_checked(&vertex, colength)?;
            colength += 1;
            steps.push(current.clone());
        }
        if &current != target {
            return Err(MonomialError::InvariantViolation(format!("chain ended at {current}, not {target}")));
        }
        Ok(steps)
    }
}

impl std::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let mut wrote = false;
            for (i, &e) in g.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                wrote = true;
                if self.dim <= 3 {
                    write!(f, "{}", NAMES[i])?;
                } else {
                    write!(f, "x{}", i + 1)?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            if !wrote {
                write!(f, "1")?;
            }
        }
        write!(f, ")")
    }
}

/// Whether `m^n + (x^v)` is integrally closed, for `|v| = n - 1`.
pub fn check_example_3_3(n: u32, v: &[u32]) -> Result<bool, MonomialError> {
    if n < 2 {
        return Err(MonomialError::BadExample(format!("need n >= 2, got {n}")));
    }
    let degree: u32 = v.iter().sum();
    if degree != n - 1 {
        return Err(MonomialError::BadExample(format!("|v| = {degree}, need {}", n - 1)));
    }
    let ideal = MonomialIdeal::maximal_power(v.len(), n)?.sum(&MonomialIdeal::new(v.len(), vec![v.to_vec()])?)?;
    ideal.is_integrally_closed()
}

/// Counts of colength-`n` monomial ideals in two variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub colength: usize,
    pub total: usize,
    pub integrally_closed: usize,
    /// Ideals that are not integrally closed.
    pub witnesses: Vec<MonomialIdeal>,
}

/// Partitions of `n` into non-increasing parts, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            prefix.push(part);
            rec(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Monomial ideal whose staircase has row `j` (exponent of `y`) of length
/// `rows[j]`.
pub fn ideal_from_partition(rows: &[usize]) -> MonomialIdeal {
    let mut gens = vec![vec![0, rows.len() as u32]];
    for (j, &len) in rows.iter().enumerate() {
        if j == 0 || len < rows[j - 1] {
            gens.push(vec![len as u32, j as u32]);
        }
    }
    MonomialIdeal::new(2, gens).expect("partition ideal is well formed")
}

/// All monomial ideals of colength `n` in two variables, counted by
/// integral closedness.
pub fn enumerate_ic_monomial(n: usize, max: usize) -> Result<EnumerationReport, MonomialError> {
    if n > max {
        return Err(MonomialError::ColengthTooLarge { n, max });
    }
    if n == 0 {
        return Err(MonomialError::BadExample("colength must be positive".into()));
    }
    let mut report = EnumerationReport { colength: n, total: 0, integrally_closed: 0, witnesses: Vec::new() };
    for rows in partitions(n) {
        let ideal = ideal_from_partition(&rows);
        report.total += 1;
        if ideal.is_integrally_closed()? {
            report.integrally_closed += 1;
        } else {
            report.witnesses.push(ideal);
        }
    }
    report.witnesses.sort();
    Ok(report)
}
