//! Invariants of reduced spaces: toric reductions of the linear models,
//! reduced volumes, chambers and the Jeffrey–Kirwan pairing of powers of
//! the degree-two equivariant generator.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::rational::{factorial, int, pow, Rational};
use crate::algebra::Polynomial;
use crate::dh::{dh_measure, ensure_regular};
use crate::error::{Error, Result};
use crate::spaces::{linearize, validate_consistency, HamiltonianSpaceData, LinearModel, Sign};

/// Reduction of one linear model at level `a`: a weighted projective space
/// with weights `|m_r|` when `a` lies above the base value, empty otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReductionData {
    pub weights: Vec<u64>,
    pub kaehler_level: Rational,
    pub sign: Sign,
    pub present: bool,
}

pub fn toric_reduction_data(model: &LinearModel, a: &Rational) -> Result<ToricReductionData> {
    if *a == model.base {
        return Err(Error::NonRegularLevel {
            level: a.clone(),
            fixed_point: "linear model".into(),
        });
    }
    let kaehler_level = a - &model.base;
    Ok(ToricReductionData {
        weights: model
            .circle_weights
            .iter()
            .map(|m| m.unsigned_abs())
            .collect(),
        present: kaehler_level > Rational::zero(),
        kaehler_level,
        sign: model.local_sign(),
    })
}

/// Signed normalized volume of the model's reduction at `a`; this is the
/// density of the model's DH measure at `a`.
pub fn linear_reduced_volume(model: &LinearModel, a: &Rational) -> Result<Rational> {
    let data = toric_reduction_data(model, a)?;
    if !data.present {
        return Ok(Rational::zero());
    }
    let d = model.dim();
    if d == 0 {
        return Err(Error::AtomicMeasure);
    }
    let denom = Rational::from_integer(factorial(d - 1)) * model.abs_weight_product();
    Ok(data.sign.as_rational() * pow(&data.kaehler_level, d - 1) / denom)
}

fn regular_models(space: &HamiltonianSpaceData, a: &Rational) -> Result<Vec<LinearModel>> {
    ensure_regular(space, a)?;
    validate_consistency(space)?.into_result()?;
    linearize(space)
}

/// Volume of the reduced space at a regular level, as the sum of the toric
/// reductions' volumes.
pub fn reduced_volume(space: &HamiltonianSpaceData, a: &Rational) -> Result<Rational> {
    regular_models(space, a)?
        .iter()
        .try_fold(Rational::zero(), |acc, m| {
            Ok(acc + linear_reduced_volume(m, a)?)
        })
}

/// `∫_{M_red} κ(x)^{d-1}` at a regular level `a`, computed as
/// `Σ_{φ(p_k) < a} orientation_sign_k / Π_r m_rk`.
pub fn jk_pairing(space: &HamiltonianSpaceData, a: &Rational) -> Result<Rational> {
    if space.half_dim() == 0 {
        return Err(Error::AtomicMeasure);
    }
    Ok(regular_models(space, a)?
        .iter()
        .filter(|m| m.base < *a)
        .fold(Rational::zero(), |acc, m| {
            acc + m.signed_inverse_weight_product()
        }))
}

/// Pairing of `Σ_j c_j x^j` against the reduced space; only the `x^{d-1}`
/// component has the right degree to contribute.
pub fn jk_pairing_polynomial(
    space: &HamiltonianSpaceData,
    coefficients: &[Rational],
    a: &Rational,
) -> Result<Rational> {
    let top = space
        .half_dim()
        .checked_sub(1)
        .ok_or(Error::AtomicMeasure)?;
    let c = coefficients
        .get(top)
        .cloned()
        .unwrap_or_else(Rational::zero);
    Ok(c * jk_pairing(space, a)?)
}

/// The regular values of the moment map split into chambers between
/// consecutive fixed-point levels; the DH density is one polynomial on each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChamberDecomposition {
    pub critical_values: Vec<Rational>,
    pub chamber_polynomials: Vec<Polynomial>,
}

impl ChamberDecomposition {
    /// Polynomial of the chamber containing the regular value `a`
    /// (zero outside the moment image).
    pub fn polynomial_at(&self, a: &Rational) -> Result<Polynomial> {
        if self.critical_values.binary_search(a).is_ok() {
            return Err(Error::NonRegularPoint(a.clone()));
        }
        let idx = self.critical_values.partition_point(|c| c < a);
        if idx == 0 || idx == self.critical_values.len() {
            return Ok(Polynomial::zero());
        }
        Ok(self.chamber_polynomials[idx - 1].clone())
    }
}

pub fn chamber_decomposition(space: &HamiltonianSpaceData) -> Result<ChamberDecomposition> {
    let critical_values: Vec<Rational> = space
        .circle_moments()?
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if critical_values.is_empty() {
        return Ok(ChamberDecomposition::default());
    }
    let mu = dh_measure(space)?;
    let chamber_polynomials = critical_values
        .windows(2)
        .map(|w| mu.piece_at(&((&w[0] + &w[1]) / int(2))))
        .collect::<Result<_>>()?;
    Ok(ChamberDecomposition {
        critical_values,
        chamber_polynomials,
    })
}
