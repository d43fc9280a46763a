//! JSON documents for spaces, measures, chamber decompositions and
//! characters. Rationals are always strings (`"p/q"` or an integer), never
//! JSON floats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::algebra::{LaurentPolynomial, PiecewisePolynomialMeasure, Polynomial};
use crate::error::{Error, Result};
use crate::quantization::EquivariantCharacter;
use crate::reduction::ChamberDecomposition;
use crate::spaces::{FixedPointDatum, HamiltonianSpaceData, Sign};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    torus_rank: usize,
    half_dim: usize,
    fixed_points: Vec<FixedPointDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPointDoc {
    name: String,
    moment: Vec<String>,
    weights: Vec<Vec<i64>>,
    orientation_sign: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureDoc {
    breakpoints: Vec<String>,
    pieces: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChamberDoc {
    critical_values: Vec<String>,
    chamber_polynomials: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn rationals_to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn strings_to_rationals(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

/// Parses a space file. Field and syntax errors carry line and column.
pub fn parse_space(text: &str) -> Result<HamiltonianSpaceData> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(json_error)?;
    let fixed_points = doc
        .fixed_points
        .into_iter()
        .map(|p| {
            let orientation_sign = Sign::from_i64(p.orientation_sign).ok_or_else(|| {
                Error::Parse(format!(
                    "orientation_sign of `{}` must be 1 or -1, found {}",
                    p.name, p.orientation_sign
                ))
            })?;
            let moment = strings_to_rationals(&p.moment)?;
            Ok(FixedPointDatum::new(
                p.name,
                moment,
                p.weights,
                orientation_sign,
            ))
        })
        .collect::<Result<_>>()?;
    HamiltonianSpaceData::new(doc.torus_rank, doc.half_dim, fixed_points)
}

/// Canonical space file text; `parse_space` of it reproduces the space.
pub fn write_space(space: &HamiltonianSpaceData) -> String {
    pretty(&SpaceDoc {
        torus_rank: space.torus_rank(),
        half_dim: space.half_dim(),
        fixed_points: space
            .fixed_points()
            .iter()
            .map(|p| FixedPointDoc {
                name: p.name.clone(),
                moment: rationals_to_strings(&p.moment),
                weights: p.weights.clone(),
                orientation_sign: p.orientation_sign.value(),
            })
            .collect(),
    })
}

pub fn write_measure(mu: &PiecewisePolynomialMeasure) -> String {
    pretty(&MeasureDoc {
        breakpoints: rationals_to_strings(mu.breakpoints()),
        pieces: mu
            .pieces()
            .iter()
            .map(|p| rationals_to_strings(p.coeffs()))
            .collect(),
    })
}

pub fn parse_measure(text: &str) -> Result<PiecewisePolynomialMeasure> {
    let doc: MeasureDoc = serde_json::from_str(text).map_err(json_error)?;
    let pieces = doc
        .pieces
        .iter()
        .map(|cs| strings_to_rationals(cs).map(Polynomial::new))
        .collect::<Result<_>>()?;
    PiecewisePolynomialMeasure::new(strings_to_rationals(&doc.breakpoints)?, pieces)
}

pub fn write_chambers(chambers: &ChamberDecomposition) -> String {
    pretty(&ChamberDoc {
        critical_values: rationals_to_strings(&chambers.critical_values),
        chamber_polynomials: chambers
            .chamber_polynomials
            .iter()
            .map(|p| rationals_to_strings(p.coeffs()))
            .collect(),
    })
}

/// `{exponent: coefficient}` with integer keys and values.
pub fn write_character(chi: &EquivariantCharacter) -> Result<String> {
    let map = chi
        .coefficients()
        .into_iter()
        .map(|(e, c)| {
            c.to_i64()
                .map(|c| (e, c))
                .ok_or_else(|| Error::InvalidData(format!("coefficient {c} exceeds 64 bits")))
        })
        .collect::<Result<BTreeMap<i64, i64>>>()?;
    Ok(pretty(&map))
}

pub fn parse_character(text: &str) -> Result<EquivariantCharacter> {
    let map: BTreeMap<i64, i64> = serde_json::from_str(text).map_err(json_error)?;
    EquivariantCharacter::from_laurent(LaurentPolynomial::from_terms(
        map.into_iter()
            .map(|(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
    ))
}
