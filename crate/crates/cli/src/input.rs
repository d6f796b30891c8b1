//! Reading JSON arguments: each flag holds a file path or inline JSON.

use std::path::Path;

use complete_ideals::field::{FieldSpec, RawCoeff};
use complete_ideals::fiber_cone::{FiberConePresentation, Term};
use complete_ideals::oracle::Polynomial;
use complete_ideals::{validate_graph, Cycle, DualGraph, MonomialIdeal, RawGraph};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// Contents of the file at `arg` if one exists, otherwise `arg` itself.
pub fn source(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

pub fn parse<T: DeserializeOwned>(flag: &str, arg: &str) -> Result<T, CliError> {
    let text = source(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

pub fn graph(arg: &str) -> Result<DualGraph, CliError> {
    let raw: RawGraph = parse("graph", arg)?;
    Ok(validate_graph(&raw)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycleInput {
    Bare(Vec<i64>),
    Wrapped(Cycle),
}

/// A cycle as `{"coeffs":[..]}` or a bare coefficient list.
pub fn cycle(flag: &str, arg: &str) -> Result<Cycle, CliError> {
    Ok(match parse::<CycleInput>(flag, arg)? {
        CycleInput::Bare(c) => Cycle::new(c),
        CycleInput::Wrapped(c) => c,
    })
}

#[derive(Deserialize)]
struct RawIdeal {
    dim: usize,
    gens: Vec<Vec<u32>>,
}

pub fn ideal(flag: &str, arg: &str) -> Result<MonomialIdeal, CliError> {
    let raw: RawIdeal = parse(flag, arg)?;
    Ok(MonomialIdeal::new(raw.dim, raw.gens)?)
}

#[derive(Deserialize)]
struct RawPresentation {
    vars: usize,
    field: FieldSpec,
    relations: Vec<Vec<(RawCoeff, Vec<u32>)>>,
}

fn rational(c: &RawCoeff) -> Result<BigRational, CliError> {
    c.to_rational().map_err(CliError::Usage)
}

pub fn presentation(arg: &str) -> Result<FiberConePresentation, CliError> {
    let raw: RawPresentation = parse("presentation", arg)?;
    let relations = raw
        .relations
        .iter()
        .map(|rel| rel.iter().map(|(c, e)| Ok((rational(c)?, e.clone()))).collect::<Result<Vec<Term>, CliError>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiberConePresentation::new(raw.vars, raw.field, relations)?)
}

pub fn point(arg: &str) -> Result<Vec<BigRational>, CliError> {
    let raw: Vec<RawCoeff> = parse("point", arg)?;
    raw.iter().map(rational).collect()
}

/// `rationals`, a prime such as `5`, or the JSON forms `"rationals"` / `{"fp":5}`.
pub fn field(arg: &str) -> Result<FieldSpec, CliError> {
    let arg = arg.trim();
    if arg == "rationals" {
        return Ok(FieldSpec::Rationals);
    }
    if let Ok(p) = arg.parse::<u64>() {
        return Ok(FieldSpec::Prime(p));
    }
    serde_json::from_str(arg).map_err(|_| CliError::Usage(format!("--field: expected `rationals`, a prime, or JSON, got {arg:?}")))
}

pub fn polynomial(flag: &str, arg: &str) -> Result<Polynomial, CliError> {
    parse(flag, arg)
}

pub fn polynomials(flag: &str, arg: &str) -> Result<Vec<Polynomial>, CliError> {
    parse(flag, arg)
}
