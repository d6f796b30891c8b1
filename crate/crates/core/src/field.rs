//! Coefficient fields: the rationals and small prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{value} has no image in F_{p}")]
    NotRepresentable { value: String, p: u64 },
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;
    /// Canonical rational representative (residues in `0..p` for prime fields).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
}

/// The prime field F_p, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 || p > u32::MAX as u64 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        Some(self.pow(a, (self.p - 2) as u32))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let num = self.reduce_int(q.numer());
        let den = self.reduce_int(q.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| FieldError::NotRepresentable { value: q.to_string(), p: self.p })?;
        Ok(self.mul(&num, &inv))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}

/// Field choice as it appears in JSON: `"rationals"` or `{"fp": 5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "rationals")]
    Rationals,
    #[serde(rename = "fp")]
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rationals => None,
        }
    }
}

/// Coefficient in JSON: an integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCoeff {
    Int(i64),
    Text(String),
}

impl RawCoeff {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            RawCoeff::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RawCoeff::Text(s) => s.trim().parse::<BigRational>().map_err(|e| format!("bad coefficient {s:?}: {e}")),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_integer() {
            if let Some(v) = q.to_integer().to_i64() {
                return RawCoeff::Int(v);
            }
        }
        RawCoeff::Text(q.to_string())
    }
}

/// Smallest-magnitude rational with the given residue, for compact display.
pub fn symmetric_residue(p: u64, a: u64) -> i64 {
    let a = a as i64;
    let p = p as i64;
    if a > p / 2 {
        a - p
    } else {
        a
    }
}
