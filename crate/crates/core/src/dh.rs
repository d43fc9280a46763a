//! Duistermaat–Heckman measures of circle spaces via the linearization.
//!
//! Liouville measures are normalized as `(ω/2π)^d / d!`, so the model `ℂ`
//! with weight 1 pushes forward to Lebesgue measure on `[base, ∞)`.

use num_traits::Zero;

use crate::algebra::rational::{factorial, Rational};
use crate::algebra::{PiecewisePolynomialMeasure, Polynomial};
use crate::error::{Error, Result};
use crate::spaces::{linearize, validate_consistency, HamiltonianSpaceData, LinearModel};

/// Push-forward of a linear model's signed Liouville measure, cut off at
/// `horizon`. The density is
/// `orientation_sign · (t - base)^(d-1) / ((d-1)! · Π m_r)` on `(base, horizon)`.
pub fn linear_model_measure(
    model: &LinearModel,
    horizon: &Rational,
) -> Result<PiecewisePolynomialMeasure> {
    let d = model.dim();
    if d == 0 {
        return Err(Error::AtomicMeasure);
    }
    if *horizon <= model.base {
        return Err(Error::HorizonBelowBase {
            base: Box::new(model.base.clone()),
            horizon: Box::new(horizon.clone()),
        });
    }
    let coeff = model.signed_inverse_weight_product() / Rational::from_integer(factorial(d - 1));
    let density = Polynomial::shifted_power(&model.base, d - 1).scale(&coeff);
    PiecewisePolynomialMeasure::on_interval(model.base.clone(), horizon.clone(), density)
}

/// DH measure of a compact circle space as the sum of its linear models.
pub fn dh_measure(space: &HamiltonianSpaceData) -> Result<PiecewisePolynomialMeasure> {
    validate_consistency(space)?.into_result()?;
    let models = linearize(space)?;
    let Some(horizon) = models.iter().map(|m| &m.base).max().cloned() else {
        return Ok(PiecewisePolynomialMeasure::zero());
    };
    if space.half_dim() == 0 {
        return Err(Error::AtomicMeasure);
    }
    models
        .iter()
        .filter(|m| m.base < horizon)
        .try_fold(PiecewisePolynomialMeasure::zero(), |acc, m| {
            Ok(acc.add(&linear_model_measure(m, &horizon)?))
        })
}

/// Jump of the `(d-1)`-th density derivative at the `k`-th fixed point.
pub fn dh_jump(space: &HamiltonianSpaceData, k: usize) -> Result<Rational> {
    if space.half_dim() == 0 {
        return Err(Error::AtomicMeasure);
    }
    let models = linearize(space)?;
    let model = models.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        len: models.len(),
    })?;
    Ok(model.signed_inverse_weight_product())
}

/// Fails when `level` is the moment value of a fixed point.
pub(crate) fn ensure_regular(space: &HamiltonianSpaceData, level: &Rational) -> Result<()> {
    space.ensure_circle()?;
    match space.fixed_points().iter().find(|p| p.moment[0] == *level) {
        Some(p) => Err(Error::NonRegularLevel {
            level: level.clone(),
            fixed_point: p.name.clone(),
        }),
        None => Ok(()),
    }
}

/// DH measure of the symplectic cut at level `a`: the part of the measure
/// below `a`. The reduced space glued in at the top is of lower dimension
/// and carries no mass.
pub fn cut_measure(
    space: &HamiltonianSpaceData,
    a: &Rational,
) -> Result<PiecewisePolynomialMeasure> {
    ensure_regular(space, a)?;
    dh_measure(space)?.truncate(a)
}

pub fn total_volume(space: &HamiltonianSpaceData) -> Result<Rational> {
    if space.is_empty() {
        return Ok(Rational::zero());
    }
    Ok(dh_measure(space)?.integrate())
}
