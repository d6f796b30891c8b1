//! Point criterion for adjacent complete ideals on a fiber cone presentation.
//!
//! Let `I` be complete, `V = I/mI` and `R = S/a` the fiber cone with `S` the
//! symmetric algebra on `V`. An ideal `I' = mI + W` with `W ⊂ V` a hyperplane,
//! `W = ker(lambda)`, is complete exactly when `W S ⊇ a`.
//!
//! For homogeneous `G` of degree `n`, `G ∈ W S` iff `G(lambda) = 0`. Choose a
//! basis `w_1, ..., w_s` of `W` and `u` with `lambda(u) = 1`, so `G` is a
//! polynomial in the `w_i` and `u`; modulo `W S` only the monomial `u^n`
//! survives, with coefficient obtained by sending every basis vector `v_j` of
//! `V` to `lambda(v_j) t` and reading off `t^n`. Hence the criterion is the
//! vanishing of every relation at the coordinates of `lambda`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError, FieldSpec, PrimeField, RawCoeff, Rationals};

/// Largest prime accepted by [`enumerate_points_fq`] unless overridden.
pub const DEFAULT_MAX_PRIME: u64 = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberConeError {
    #[error("point has {found} coordinates, presentation has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point enumeration needs a prime field")]
    InfiniteField,
    #[error("field size {p} exceeds enumeration bound {max}")]
    FieldTooLarge { p: u64, max: u64 },
    #[error("unknown builtin presentation {0:?}")]
    UnknownBuiltin(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl FiberConeError {
    pub fn kind(&self) -> &'static str {
        match self {
            FiberConeError::DimensionMismatch { .. } => "DimensionMismatch",
            FiberConeError::NotHomogeneous(_) => "NotHomogeneous",
            FiberConeError::ZeroRelation(_) => "ZeroRelation",
            FiberConeError::ZeroPoint => "ZeroPoint",
            FiberConeError::InfiniteField => "InfiniteField",
            FiberConeError::FieldTooLarge { .. } => "FieldTooLarge",
            FiberConeError::UnknownBuiltin(_) => "UnknownBuiltin",
            FiberConeError::BadParameter(_) => "BadParameter",
            FiberConeError::Field(FieldError::NotPrime(_)) => "NotPrime",
            FiberConeError::Field(FieldError::NotRepresentable { .. }) => "NotRepresentable",
        }
    }
}

/// Term of a homogeneous relation: coefficient and exponent vector.
pub type Term = (BigRational, Vec<u32>);

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPresentation {
    vars: usize,
    field: FieldSpec,
    relations: Vec<Vec<(RawCoeff, Vec<u32>)>>,
}

/// Graded algebra `S/a` given by generators of `a`.
///
/// JSON: `{"vars":3,"field":{"fp":3},"relations":[[[1,[1,1,0]]]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct FiberConePresentation {
    num_vars: usize,
    field: FieldSpec,
    relations: Vec<Vec<Term>>,
}

impl TryFrom<RawPresentation> for FiberConePresentation {
    type Error = String;

    fn try_from(raw: RawPresentation) -> Result<Self, String> {
        let relations = raw
            .relations
            .into_iter()
            .map(|rel| {
                rel.into_iter()
                    .map(|(c, e)| Ok((c.to_rational()?, e)))
                    .collect::<Result<Vec<Term>, String>>()
            })
            .collect::<Result<Vec<_>, String>>()?;
        FiberConePresentation::new(raw.vars, raw.field, relations).map_err(|e| e.to_string())
    }
}

impl From<FiberConePresentation> for RawPresentation {
    fn from(p: FiberConePresentation) -> Self {
        RawPresentation {
            vars: p.num_vars,
            field: p.field,
            relations: p
                .relations
                .iter()
                .map(|rel| rel.iter().map(|(c, e)| (RawCoeff::from_rational(c), e.clone())).collect())
                .collect(),
        }
    }
}

fn canonical_terms<F: Field>(field: &F, terms: Vec<Term>) -> Result<Vec<Term>, FiberConeError> {
    let mut merged: std::collections::BTreeMap<Vec<u32>, F::Elem> = std::collections::BTreeMap::new();
    for (c, e) in terms {
        let c = field.from_rational(&c)?;
        let slot = merged.entry(e).or_insert_with(|| field.zero());
        *slot = field.add(slot, &c);
    }
    Ok(merged
        .into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(e, c)| (field.to_rational(&c), e))
        .collect())
}

fn evaluate<F: Field>(field: &F, terms: &[Term], point: &[F::Elem]) -> Result<F::Elem, FiberConeError> {
    let mut acc = field.zero();
    for (c, e) in terms {
        let mut t = field.from_rational(c)?;
        for (x, &k) in point.iter().zip(e) {
            t = field.mul(&t, &field.pow(x, k));
        }
        acc = field.add(&acc, &t);
    }
    Ok(acc)
}

impl FiberConePresentation {
    /// Validates homogeneity and canonicalizes coefficients over the field.
    pub fn new(num_vars: usize, field: FieldSpec, relations: Vec<Vec<Term>>) -> Result<Self, FiberConeError> {
        let mut canonical = Vec::with_capacity(relations.len());
        for (i, rel) in relations.into_iter().enumerate() {
            if let Some((_, e)) = rel.iter().find(|(_, e)| e.len() != num_vars) {
                return Err(FiberConeError::DimensionMismatch { expected: num_vars, found: e.len() });
            }
            let rel = match field {
                FieldSpec::Rationals => canonical_terms(&Rationals, rel)?,
                FieldSpec::Prime(p) => canonical_terms(&PrimeField::new(p)?, rel)?,
            };
            if rel.is_empty() {
                return Err(FiberConeError::ZeroRelation(i));
            }
            let degree: u32 = rel[0].1.iter().sum();
            if rel.iter().any(|(_, e)| e.iter().sum::<u32>() != degree) {
                return Err(FiberConeError::NotHomogeneous(i));
            }
            canonical.push(rel);
        }
        Ok(FiberConePresentation { num_vars, field, relations: canonical })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn relations(&self) -> &[Vec<Term>] {
        &self.relations
    }

    /// The same relations read over another field.
    pub fn over(&self, field: FieldSpec) -> Result<Self, FiberConeError> {
        Self::new(self.num_vars, field, self.relations.clone())
    }
}

/// Point of projective space, normalized so the first nonzero coordinate is 1.
///
/// JSON: list of coordinates, integers or strings such as `"1/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigRational>,
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<RawCoeff> = self.coords.iter().map(RawCoeff::from_rational).collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<RawCoeff> = Vec::deserialize(d)?;
        let coords = raw.iter().map(RawCoeff::to_rational).collect::<Result<Vec<_>, _>>().map_err(serde::de::Error::custom)?;
        match coords.iter().find(|c| !c.is_zero()) {
            Some(lead) if lead.is_one() => Ok(ProjectivePoint { coords }),
            Some(_) => Err(serde::de::Error::custom("first nonzero coordinate must be 1")),
            None => Err(serde::de::Error::custom("point has no nonzero coordinate")),
        }
    }
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn normalize<F: Field>(field: &F, coords: Vec<F::Elem>) -> Result<Self, FiberConeError> {
        let lead = coords.iter().find(|c| !field.is_zero(c)).ok_or(FiberConeError::ZeroPoint)?;
        let inv = field.inv(lead).expect("nonzero element is invertible");
        Ok(ProjectivePoint { coords: coords.iter().map(|c| field.to_rational(&field.mul(c, &inv))).collect() })
    }

    /// Canonical representative of `coords` over `field`.
    pub fn new(field: FieldSpec, coords: &[BigRational]) -> Result<Self, FiberConeError> {
        match field {
            FieldSpec::Rationals => {
                let f = Rationals;
                let elems = coords.iter().map(|c| f.from_rational(c)).collect::<Result<Vec<_>, _>>()?;
                Self::normalize(&f, elems)
            }
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p)?;
                let elems = coords.iter().map(|c| f.from_rational(c)).collect::<Result<Vec<_>, _>>()?;
                Self::normalize(&f, elems)
            }
        }
    }

    pub fn from_ints(field: FieldSpec, coords: &[i64]) -> Result<Self, FiberConeError> {
        let q: Vec<BigRational> = coords.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::new(field, &q)
    }
}

fn vanishes_over<F: Field>(field: &F, pres: &FiberConePresentation, coords: &[BigRational]) -> Result<bool, FiberConeError> {
    let point = coords.iter().map(|c| field.from_rational(c)).collect::<Result<Vec<_>, _>>()?;
    if point.iter().all(|c| field.is_zero(c)) {
        return Err(FiberConeError::ZeroPoint);
    }
    for rel in &pres.relations {
        if !field.is_zero(&evaluate(field, rel, &point)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `mI + ker(lambda)` is complete: every relation vanishes at `lambda`.
pub fn is_adjacent_point(pres: &FiberConePresentation, lambda: &[BigRational]) -> Result<bool, FiberConeError> {
    if lambda.len() != pres.num_vars {
        return Err(FiberConeError::DimensionMismatch { expected: pres.num_vars, found: lambda.len() });
    }
    match pres.field {
        FieldSpec::Rationals => vanishes_over(&Rationals, pres, lambda),
        FieldSpec::Prime(p) => vanishes_over(&PrimeField::new(p)?, pres, lambda),
    }
}

/// All `F_p`-points of the projective variety cut out by the relations.
pub fn enumerate_points_fq(pres: &FiberConePresentation, max_prime: u64) -> Result<Vec<ProjectivePoint>, FiberConeError> {
    let p = pres.field.prime().ok_or(FiberConeError::InfiniteField)?;
    if p > max_prime {
        return Err(FiberConeError::FieldTooLarge { p, max: max_prime });
    }
    let field = PrimeField::new(p)?;
    let n = pres.num_vars;
    let mut out = Vec::new();
    // canonical representatives: zeros, a leading 1, then anything
    for lead in 0..n {
        let free = n - lead - 1;
        let count = p.pow(free as u32);
        for index in 0..count {
            let mut coords = vec![0u64; n];
            coords[lead] = 1;
            let mut rest = index;
            for c in coords.iter_mut().skip(lead + 1).rev() {
                *c = rest % p;
                rest /= p;
            }
            let q: Vec<BigRational> = coords.iter().map(|&c| field.to_rational(&c)).collect();
            if vanishes_over(&field, pres, &q)? {
                out.push(ProjectivePoint { coords: q });
            }
        }
    }
    Ok(out)
}

fn term(c: i64, e: &[u32]) -> Term {
    (BigRational::from_integer(c.into()), e.to_vec())
}

/// Presentations shipped with the crate.
///
/// * `an_maximal_ideal` (parameter `n >= 1`): fiber cone of the maximal ideal
///   of the `A_n` surface singularity, `k[X,Y,Z]/(XY)` for `n >= 2` and
///   `k[X,Y,Z]/(XY - Z^2)` for `n = 1`.
/// * `veronese_m2`: fiber cone of `m^2` in two variables with coordinates
///   `a, b, c` for `x^2, xy, y^2`, relation `b^2 - ac`.
pub fn builtin_presentation(name: &str, param: Option<u32>, field: FieldSpec) -> Result<FiberConePresentation, FiberConeError> {
    let relation = match name {
        "an_maximal_ideal" => {
            let n = param.ok_or_else(|| FiberConeError::BadParameter("an_maximal_ideal needs n".into()))?;
            match n {
                0 => return Err(FiberConeError::BadParameter("n must be at least 1".into())),
                1 => vec![term(1, &[1, 1, 0]), term(-1, &[0, 0, 2])],
                _ => vec![term(1, &[1, 1, 0])],
            }
        }
        "veronese_m2" => vec![term(1, &[0, 2, 0]), term(-1, &[1, 0, 1])],
        other => return Err(FiberConeError::UnknownBuiltin(other.to_string())),
    };
    FiberConePresentation::new(3, field, vec![relation])
}

/// The coordinate vector `lambda` of a point as exact rationals; a helper for
/// callers holding integer data.
pub fn int_point(coords: &[i64]) -> Vec<BigRational> {
    coords.iter().map(|&c| BigRational::from_integer(c.into())).collect()
}

/// True when every coordinate listed in `zeros` vanishes at the point.
pub fn lies_on_coordinate_subspace(point: &ProjectivePoint, zeros: &[usize]) -> bool {
    zeros.iter().all(|&i| point.coords[i].is_zero())
}
