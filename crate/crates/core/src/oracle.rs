//! Integral-dependence certificates for two-variable polynomial instances.
//!
//! Two independent searches decide, when they succeed, whether `y` is
//! integral over the ideal `I = (g_1, ..., g_r)` of the local ring at the
//! origin:
//!
//! * an exact equation `y^n + a_1 y^{n-1} + ... + a_n = 0` with `a_s ∈ I^s`,
//!   found by linear algebra over a bounded monomial basis, proves
//!   integrality;
//! * a monomial valuation `v` (after a linear change of coordinates) with
//!   `v(y) < min v(g_i)` proves non-integrality, since every valuation
//!   centered at the origin satisfies `v(z) >= v(I)` for `z` integral over `I`.
//!
//! Both are exact, so a verdict is never wrong; when neither search succeeds
//! within its bounds the answer is [`Certificate::Unknown`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{symmetric_residue, Field, FieldError, FieldSpec, PrimeField, RawCoeff, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("bounds must be at least 1: {0:?}")]
    BadBounds(Bounds),
    #[error("ideal needs at least one generator")]
    EmptyIdeal,
    #[error("valuation and equation searches disagree")]
    Conflict,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl OracleError {
    pub fn kind(&self) -> &'static str {
        match self {
            OracleError::BadBounds(_) => "BadBounds",
            OracleError::EmptyIdeal => "EmptyIdeal",
            OracleError::Conflict => "Conflict",
            OracleError::Field(FieldError::NotPrime(_)) => "NotPrime",
            OracleError::Field(FieldError::NotRepresentable { .. }) => "NotRepresentable",
        }
    }
}

/// Search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest degree `n` of the integral equation.
    pub n_max: usize,
    /// Largest total degree of a coefficient `a_s`.
    pub deg_max: u32,
    /// Monomial valuations `v(x) = a, v(y) = b` use `1 <= a, b <= weight_bound`.
    pub weight_bound: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { n_max: 3, deg_max: 12, weight_bound: 4 }
    }
}

impl Bounds {
    fn check(&self) -> Result<(), OracleError> {
        if self.n_max == 0 || self.deg_max == 0 || self.weight_bound == 0 {
            return Err(OracleError::BadBounds(*self));
        }
        Ok(())
    }
}

/// Polynomial in `x, y` with exact rational coefficients.
///
/// JSON: list of `[coeff, [e_x, e_y]]` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<[u32; 2], BigRational>,
}

impl Polynomial {
    pub fn new(terms: impl IntoIterator<Item = (BigRational, [u32; 2])>) -> Self {
        let mut map: BTreeMap<[u32; 2], BigRational> = BTreeMap::new();
        for (c, e) in terms {
            *map.entry(e).or_insert_with(|| BigRational::from_integer(0.into())) += c;
        }
        map.retain(|_, c| *c != BigRational::from_integer(0.into()));
        Polynomial { terms: map }
    }

    pub fn monomial(c: i64, e: [u32; 2]) -> Self {
        Self::new([(BigRational::from_integer(c.into()), e)])
    }

    pub fn from_ints(terms: &[(i64, [u32; 2])]) -> Self {
        Self::new(terms.iter().map(|&(c, e)| (BigRational::from_integer(c.into()), e)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 2], &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_field<F: Field>(&self, field: &F) -> Result<Poly<F::Elem>, FieldError> {
        let mut out = Poly::new();
        for (e, c) in &self.terms {
            let c = field.from_rational(c)?;
            if !field.is_zero(&c) {
                out.insert(*e, c);
            }
        }
        Ok(out)
    }

    fn from_field<F: Field>(field: &F, p: &Poly<F::Elem>) -> Self {
        Self::new(p.iter().map(|(e, c)| (field.to_rational(c), *e)))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<(RawCoeff, [u32; 2])> =
            self.terms.iter().map(|(e, c)| (RawCoeff::from_rational(c), *e)).collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(RawCoeff, [u32; 2])> = Vec::deserialize(d)?;
        let terms = raw
            .into_iter()
            .map(|(c, e)| c.to_rational().map(|q| (q, e)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Polynomial::new(terms))
    }
}

type Poly<E> = BTreeMap<[u32; 2], E>;

fn poly_add_into<F: Field>(field: &F, acc: &mut Poly<F::Elem>, p: &Poly<F::Elem>, scale: &F::Elem, shift: [u32; 2]) {
    for (e, c) in p {
        let key = [e[0] + shift[0], e[1] + shift[1]];
        let term = field.mul(c, scale);
        let slot = acc.entry(key).or_insert_with(|| field.zero());
        *slot = field.add(slot, &term);
        if field.is_zero(slot) {
            acc.remove(&key);
        }
    }
}

fn poly_mul<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut out = Poly::new();
    for (e, c) in a {
        poly_add_into(field, &mut out, b, c, *e);
    }
    out
}

fn poly_one<F: Field>(field: &F) -> Poly<F::Elem> {
    Poly::from([([0, 0], field.one())])
}

fn poly_pow<F: Field>(field: &F, a: &Poly<F::Elem>, k: u32) -> Poly<F::Elem> {
    (0..k).fold(poly_one(field), |acc, _| poly_mul(field, &acc, a))
}

fn degree<E>(p: &Poly<E>) -> u32 {
    p.keys().map(|e| e[0] + e[1]).max().unwrap_or(0)
}

/// Multisets of size `s` from `0..r`, as non-decreasing index lists.
fn multisets(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, s: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == s {
            out.push(prefix.clone());
            return;
        }
        for i in start..r {
            prefix.push(i);
            rec(r, s, i, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, s, 0, &mut Vec::new(), &mut out);
    out
}

/// `multiplier * prod(generators)` is one summand of `a_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipTerm {
    pub generators: Vec<usize>,
    pub multiplier: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    /// `y^n + sum a_s y^{n-s} = 0`; `memberships[s-1]` writes `a_s` as an
    /// element of `I^s`.
    Integral {
        degree: usize,
        coefficients: Vec<Polynomial>,
        memberships: Vec<Vec<MembershipTerm>>,
    },
    /// Valuation `v(x) = weights[0], v(y) = weights[1]` applied after the
    /// substitution `x -> c00 x + c01 y`, `y -> c10 x + c11 y`.
    NotIntegral {
        weights: [u32; 2],
        change: [[i64; 2]; 2],
        value_y: u32,
        value_ideal: u32,
    },
    Unknown {
        bounds: Bounds,
    },
}

impl Certificate {
    pub fn is_integral(&self) -> Option<bool> {
        match self {
            Certificate::Integral { .. } => Some(true),
            Certificate::NotIntegral { .. } => Some(false),
            Certificate::Unknown { .. } => None,
        }
    }
}

fn solve_linear<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> Option<Vec<F::Elem>> {
    // each row holds `cols` coefficients followed by the right-hand side
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&f, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !field.is_zero(&row[cols])) {
        return None;
    }
    let mut solution = vec![field.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        solution[c] = rows[i][cols].clone();
    }
    Some(solution)
}

struct Column {
    s: usize,
    generators: Vec<usize>,
    shift: [u32; 2],
}

fn equation_search_over<F: Field>(
    field: &F,
    y: &Polynomial,
    ideal: &[Polynomial],
    bounds: Bounds,
) -> Result<Option<Certificate>, OracleError> {
    let yf = y.to_field(field)?;
    let gens: Vec<Poly<F::Elem>> = ideal.iter().map(|g| g.to_field(field)).collect::<Result<_, _>>()?;
    let y_pows: Vec<Poly<F::Elem>> = (0..=bounds.n_max as u32).map(|k| poly_pow(field, &yf, k)).collect();
    let mut products: BTreeMap<Vec<usize>, Poly<F::Elem>> = BTreeMap::new();

    for n in 1..=bounds.n_max {
        let mut columns = Vec::new();
        let mut vectors = Vec::new();
        for s in 1..=n {
            for ms in multisets(gens.len(), s) {
                let prod = products
                    .entry(ms.clone())
                    .or_insert_with(|| ms.iter().fold(poly_one(field), |acc, &i| poly_mul(field, &acc, &gens[i])))
                    .clone();
                if prod.is_empty() {
                    continue;
                }
                let d = degree(&prod);
                if d > bounds.deg_max {
                    continue;
                }
                let base = poly_mul(field, &prod, &y_pows[n - s]);
                for total in 0..=(bounds.deg_max - d) {
                    for i in 0..=total {
                        let shift = [i, total - i];
                        let mut v = Poly::new();
                        poly_add_into(field, &mut v, &base, &field.one(), shift);
                        columns.push(Column { s, generators: ms.clone(), shift });
                        vectors.push(v);
                    }
                }
            }
        }
        let target = &y_pows[n];
        let mut index: BTreeMap<[u32; 2], usize> = BTreeMap::new();
        for v in vectors.iter().chain(std::iter::once(target)) {
            for e in v.keys() {
                let next = index.len();
                index.entry(*e).or_insert(next);
            }
        }
        let cols = columns.len();
        let mut rows = vec![vec![field.zero(); cols + 1]; index.len()];
        for (j, v) in vectors.iter().enumerate() {
            for (e, c) in v {
                rows[index[e]][j] = c.clone();
            }
        }
        for (e, c) in target {
            rows[index[e]][cols] = field.neg(c);
        }
        let Some(solution) = solve_linear(field, rows, cols) else {
            continue;
        };

        let mut coefficients = vec![Poly::new(); n];
        let mut memberships: Vec<BTreeMap<Vec<usize>, Poly<F::Elem>>> = vec![BTreeMap::new(); n];
        for (col, c) in columns.iter().zip(&solution) {
            if field.is_zero(c) {
                continue;
            }
            let prod = &products[&col.generators];
            poly_add_into(field, &mut coefficients[col.s - 1], prod, c, col.shift);
            let mult = memberships[col.s - 1].entry(col.generators.clone()).or_default();
            poly_add_into(field, mult, &poly_one(field), c, col.shift);
        }
        let cert = Certificate::Integral {
            degree: n,
            coefficients: coefficients.iter().map(|p| Polynomial::from_field(field, p)).collect(),
            memberships: memberships
                .into_iter()
                .map(|m| {
                    m.into_iter()
                        .filter(|(_, p)| !p.is_empty())
                        .map(|(generators, p)| MembershipTerm { generators, multiplier: Polynomial::from_field(field, &p) })
                        .collect()
                })
                .collect(),
        };
        debug_assert!(verify_over(field, y, ideal, &cert).unwrap_or(false));
        return Ok(Some(cert));
    }
    Ok(None)
}

fn verify_over<F: Field>(field: &F, y: &Polynomial, ideal: &[Polynomial], cert: &Certificate) -> Result<bool, OracleError> {
    match cert {
        Certificate::Integral { degree, coefficients, memberships } => {
            if coefficients.len() != *degree || memberships.len() != *degree {
                return Ok(false);
            }
            let yf = y.to_field(field)?;
            let gens: Vec<Poly<F::Elem>> = ideal.iter().map(|g| g.to_field(field)).collect::<Result<_, _>>()?;
            let mut total = poly_pow(field, &yf, *degree as u32);
            for s in 1..=*degree {
                let mut a = Poly::new();
                for term in &memberships[s - 1] {
                    if term.generators.len() != s || term.generators.iter().any(|&i| i >= gens.len()) {
                        return Ok(false);
                    }
                    let prod = term.generators.iter().fold(term.multiplier.to_field(field)?, |acc, &i| poly_mul(field, &acc, &gens[i]));
                    poly_add_into(field, &mut a, &prod, &field.one(), [0, 0]);
                }
                if a != coefficients[s - 1].to_field(field)? {
                    return Ok(false);
                }
                let summand = poly_mul(field, &a, &poly_pow(field, &yf, (*degree - s) as u32));
                poly_add_into(field, &mut total, &summand, &field.one(), [0, 0]);
            }
            Ok(total.is_empty())
        }
        Certificate::NotIntegral { weights, change, value_y, value_ideal } => {
            let phi = change.map(|row| row.map(|c| field.from_i64(c)));
            let det = field.sub(&field.mul(&phi[0][0], &phi[1][1]), &field.mul(&phi[0][1], &phi[1][0]));
            if field.is_zero(&det) {
                return Ok(false);
            }
            let yv = valuation(&substitute(field, &y.to_field(field)?, &phi), *weights);
            let iv = ideal
                .iter()
                .map(|g| g.to_field(field).map(|g| valuation(&substitute(field, &g, &phi), *weights)))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .min();
            Ok(yv == Some(*value_y) && iv == Some(*value_ideal) && value_y < value_ideal)
        }
        Certificate::Unknown { .. } => Ok(true),
    }
}

/// `f(c00 x + c01 y, c10 x + c11 y)`.
fn substitute<F: Field>(field: &F, f: &Poly<F::Elem>, phi: &[[F::Elem; 2]; 2]) -> Poly<F::Elem> {
    let lx: Poly<F::Elem> = [([1, 0], phi[0][0].clone()), ([0, 1], phi[0][1].clone())]
        .into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .collect();
    let ly: Poly<F::Elem> = [([1, 0], phi[1][0].clone()), ([0, 1], phi[1][1].clone())]
        .into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .collect();
    let max_x = f.keys().map(|e| e[0]).max().unwrap_or(0);
    let max_y = f.keys().map(|e| e[1]).max().unwrap_or(0);
    let px: Vec<Poly<F::Elem>> = (0..=max_x).map(|k| poly_pow(field, &lx, k)).collect();
    let py: Vec<Poly<F::Elem>> = (0..=max_y).map(|k| poly_pow(field, &ly, k)).collect();
    let mut out = Poly::new();
    for (e, c) in f {
        let t = poly_mul(field, &px[e[0] as usize], &py[e[1] as usize]);
        poly_add_into(field, &mut out, &t, c, [0, 0]);
    }
    out
}

/// Monomial valuation; `None` for the zero polynomial.
fn valuation<E>(f: &Poly<E>, w: [u32; 2]) -> Option<u32> {
    f.keys().map(|e| w[0] * e[0] + w[1] * e[1]).min()
}

/// Invertible linear changes to scan, identity first. Over a prime field all
/// of GL_2; over the rationals those with entries in `{-1, 0, 1}`.
fn linear_changes<F: Field>(field: &F) -> Vec<[[F::Elem; 2]; 2]> {
    let values: Vec<F::Elem> = field.elements().unwrap_or_else(|| vec![field.from_i64(0), field.from_i64(1), field.from_i64(-1)]);
    let identity = [[field.one(), field.zero()], [field.zero(), field.one()]];
    let mut out = vec![identity.clone()];
    for a in &values {
        for b in &values {
            for c in &values {
                for d in &values {
                    let m = [[a.clone(), b.clone()], [c.clone(), d.clone()]];
                    let det = field.sub(&field.mul(a, d), &field.mul(b, c));
                    if !field.is_zero(&det) && m != identity {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn to_display_int<F: Field>(field: &F, p: Option<u64>, e: &F::Elem) -> i64 {
    let q = field.to_rational(e);
    let v: i64 = q.to_integer().try_into().expect("small matrix entry");
    match p {
        Some(p) => symmetric_residue(p, v as u64),
        None => v,
    }
}

fn valuation_search_over<F: Field>(
    field: &F,
    p: Option<u64>,
    y: &Polynomial,
    ideal: &[Polynomial],
    bounds: Bounds,
) -> Result<Option<Certificate>, OracleError> {
    let yf = y.to_field(field)?;
    if yf.is_empty() {
        return Ok(None);
    }
    let gens: Vec<Poly<F::Elem>> = ideal.iter().map(|g| g.to_field(field)).collect::<Result<_, _>>()?;
    for phi in linear_changes(field) {
        let ty = substitute(field, &yf, &phi);
        let tg: Vec<Poly<F::Elem>> = gens.iter().map(|g| substitute(field, g, &phi)).collect();
        for a in 1..=bounds.weight_bound {
            for b in 1..=bounds.weight_bound {
                let w = [a, b];
                let vy = valuation(&ty, w).expect("nonzero stays nonzero under a linear change");
                let Some(vi) = tg.iter().filter_map(|g| valuation(g, w)).min() else {
                    continue;
                };
                if vy < vi {
                    return Ok(Some(Certificate::NotIntegral {
                        weights: w,
                        change: phi.clone().map(|row| row.map(|c| to_display_int(field, p, &c))),
                        value_y: vy,
                        value_ideal: vi,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn check_inputs(ideal: &[Polynomial], bounds: &Bounds) -> Result<(), OracleError> {
    bounds.check()?;
    if ideal.is_empty() {
        return Err(OracleError::EmptyIdeal);
    }
    Ok(())
}

macro_rules! dispatch {
    ($spec:expr, |$f:ident, $p:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                let $p: Option<u64> = None;
                $body
            }
            FieldSpec::Prime(q) => {
                let $f = PrimeField::new(q)?;
                let $p = Some(q);
                $body
            }
        }
    };
}

/// Searches for `y^n + a_1 y^{n-1} + ... + a_n = 0` with `a_s ∈ I^s`.
pub fn integral_equation_search(
    field: FieldSpec,
    y: &Polynomial,
    ideal: &[Polynomial],
    bounds: Bounds,
) -> Result<Certificate, OracleError> {
    check_inputs(ideal, &bounds)?;
    let found = dispatch!(field, |f, _p| equation_search_over(&f, y, ideal, bounds)?);
    Ok(found.unwrap_or(Certificate::Unknown { bounds }))
}

/// Searches monomial valuations composed with linear coordinate changes for
/// one separating `y` from `I`.
pub fn valuation_witness_search(
    field: FieldSpec,
    y: &Polynomial,
    ideal: &[Polynomial],
    bounds: Bounds,
) -> Result<Certificate, OracleError> {
    check_inputs(ideal, &bounds)?;
    let found = dispatch!(field, |f, p| valuation_search_over(&f, p, y, ideal, bounds)?);
    Ok(found.unwrap_or(Certificate::Unknown { bounds }))
}

/// Runs both searches; errors with [`OracleError::Conflict`] if they
/// contradict each other.
pub fn classify(field: FieldSpec, y: &Polynomial, ideal: &[Polynomial], bounds: Bounds) -> Result<Certificate, OracleError> {
    let witness = valuation_witness_search(field, y, ideal, bounds)?;
    let equation = integral_equation_search(field, y, ideal, bounds)?;
    match (witness.is_integral(), equation.is_integral()) {
        (Some(false), Some(true)) => Err(OracleError::Conflict),
        (Some(false), _) => Ok(witness),
        (_, Some(true)) => Ok(equation),
        _ => Ok(Certificate::Unknown { bounds }),
    }
}

/// Re-checks a certificate exactly.
pub fn verify(field: FieldSpec, y: &Polynomial, ideal: &[Polynomial], cert: &Certificate) -> Result<bool, OracleError> {
    dispatch!(field, |f, _p| verify_over(&f, y, ideal, cert))
}
