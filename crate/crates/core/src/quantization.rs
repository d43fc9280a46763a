//! Equivariant Riemann–Roch characters from fixed-point data.
//!
//! The character of a prequantized circle space is the fixed-point sum
//!
//! ```text
//! χ(t) = Σ_k orientation_sign_k · t^{φ(p_k)} / Π_r (1 - t^{m_rk})
//! ```
//!
//! which collapses to a Laurent polynomial. Expanding every summand in
//! ascending powers of `t` turns each one into a signed, shifted partition
//! function of the weights; the coefficient of `t^a` in χ is the Riemann–Roch
//! number of the reduced space at level `a`, and the partition terms are the
//! Riemann–Roch numbers of the toric reductions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::rational::{int, to_i64, Rational};
use crate::algebra::LaurentPolynomial;
use crate::dh::ensure_regular;
use crate::error::{Error, Result};
use crate::spaces::{linearize, HamiltonianSpaceData, LinearModel, Sign};

/// A circle space whose moment values are all integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrequantSpace {
    space: HamiltonianSpaceData,
}

impl PrequantSpace {
    pub fn new(space: HamiltonianSpaceData) -> Result<Self> {
        space.ensure_circle()?;
        for p in space.fixed_points() {
            if to_i64(&p.moment[0]).is_none() {
                return Err(Error::NotIntegral {
                    fixed_point: p.name.clone(),
                    value: p.moment[0].clone(),
                });
            }
        }
        Ok(Self { space })
    }

    pub fn space(&self) -> &HamiltonianSpaceData {
        &self.space
    }

    pub fn models(&self) -> Vec<LinearModel> {
        linearize(&self.space).expect("circle space")
    }
}

/// Laurent polynomial with integer coefficients in the circle variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivariantCharacter {
    laurent: LaurentPolynomial,
}

impl EquivariantCharacter {
    pub fn from_laurent(laurent: LaurentPolynomial) -> Result<Self> {
        if laurent.terms().values().any(|c| !c.is_integer()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self { laurent })
    }

    pub fn laurent(&self) -> &LaurentPolynomial {
        &self.laurent
    }

    /// Nonzero coefficients keyed by exponent.
    pub fn coefficients(&self) -> BTreeMap<i64, BigInt> {
        self.laurent
            .terms()
            .iter()
            .map(|(e, c)| (*e, c.numer().clone()))
            .collect()
    }

    pub fn multiplicity(&self, a: i64) -> BigInt {
        self.laurent.coeff(a).numer().clone()
    }

    /// `Σ_a multiplicity(a)`, the character at `t = 1`.
    pub fn total(&self) -> BigInt {
        self.laurent
            .terms()
            .values()
            .fold(BigInt::zero(), |acc, c| acc + c.numer())
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_zero()
    }
}

/// Ascending expansion of one fixed-point term: `coeff · t^shift / Π_r (1 - t^{|m_r|})`.
fn expanded_term(model: &LinearModel) -> (Sign, i64, Vec<u64>) {
    let base = to_i64(&model.base).expect("integral base");
    let shift: i64 = model
        .circle_weights
        .iter()
        .filter(|&&m| m < 0)
        .map(|m| m.abs())
        .sum();
    let abs: Vec<u64> = model
        .circle_weights
        .iter()
        .map(|m| m.unsigned_abs())
        .collect();
    (model.local_sign(), base + shift, abs)
}

/// Multiplicity of each distinct weight in `weights`.
fn weight_counts(weights: &[u64]) -> HashMap<u64, usize> {
    let mut counts = HashMap::new();
    for &w in weights {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
}

/// Fixed-point character, simplified by exact division over a common
/// denominator `Π_v (1 - t^v)^{max multiplicity of v}`.
pub fn character(ps: &PrequantSpace) -> Result<EquivariantCharacter> {
    let terms: Vec<(Sign, i64, Vec<u64>)> = ps.models().iter().map(expanded_term).collect();
    let mut common: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, _, weights) in &terms {
        for (w, c) in weight_counts(weights) {
            let slot = common.entry(w).or_insert(0);
            *slot = (*slot).max(c);
        }
    }
    let factor = |v: u64| LaurentPolynomial::one_minus_power(v as i64);
    let denominator = common
        .iter()
        .fold(LaurentPolynomial::one(), |acc, (&v, &c)| {
            &acc * &factor(v).pow(c)
        });
    let mut numerator = LaurentPolynomial::zero();
    for (sign, shift, weights) in &terms {
        let counts = weight_counts(weights);
        let cofactor = common
            .iter()
            .fold(LaurentPolynomial::one(), |acc, (&v, &c)| {
                &acc * &factor(v).pow(c - counts.get(&v).copied().unwrap_or(0))
            });
        let monomial = LaurentPolynomial::monomial(*shift, sign.as_rational());
        numerator = &numerator + &(&monomial * &cofactor);
    }
    EquivariantCharacter::from_laurent(numerator.div_exact(&denominator)?)
}

pub fn multiplicity(chi: &EquivariantCharacter, a: i64) -> BigInt {
    chi.multiplicity(a)
}

/// Number of `n ∈ ℤ_{≥0}^d` with `Σ_r weights[r] · n_r = target`.
pub fn count_partitions(weights: &[u64], target: i64) -> BigInt {
    if target < 0 {
        return BigInt::zero();
    }
    let target = target as usize;
    let mut ways = vec![BigInt::zero(); target + 1];
    ways[0] = BigInt::one();
    for &w in weights {
        let w = w as usize;
        for n in w..=target {
            let prev = ways[n - w].clone();
            ways[n] += prev;
        }
    }
    ways.swap_remove(target)
}

/// Riemann–Roch number of the model's toric reduction at level `a`:
/// `orientation_sign · (-1)^σ · #{n ≥ 0 : Σ |m_r| n_r = a - base - s}` with
/// `s` the sum of the absolute values of the negative weights.
pub fn partition_count(model: &LinearModel, a: i64) -> Result<BigInt> {
    if !model.base.is_integer() {
        return Err(Error::NotIntegral {
            fixed_point: "linear model".into(),
            value: model.base.clone(),
        });
    }
    let (sign, shift, weights) = expanded_term(model);
    Ok(BigInt::from(sign.value()) * count_partitions(&weights, a - shift))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrRow {
    pub level: i64,
    pub multiplicity: BigInt,
    pub partition_sum: BigInt,
}

impl RrRow {
    pub fn agrees(&self) -> bool {
        self.multiplicity == self.partition_sum
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrReport {
    pub rows: Vec<RrRow>,
}

impl RrReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RrRow::agrees)
    }
}

/// Compares each weight multiplicity with the sum of the toric partition
/// counts for every level in `a_min..=a_max`.
pub fn verify_rr_identity(ps: &PrequantSpace, a_min: i64, a_max: i64) -> Result<RrReport> {
    let chi = character(ps)?;
    let models = ps.models();
    let rows = (a_min..=a_max)
        .map(|level| {
            let partition_sum = models.iter().try_fold(BigInt::zero(), |acc, m| {
                Ok::<_, Error>(acc + partition_count(m, level)?)
            })?;
            Ok(RrRow {
                level,
                multiplicity: chi.multiplicity(level),
                partition_sum,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RrReport { rows })
}

/// A range of levels on which agreement of the identity implies agreement at
/// every integer level.
///
/// Below the lowest expansion start both sides vanish. Past the last shift
/// every partition term is a quasi-polynomial of degree `< d` whose period
/// divides the lcm `L` of the weights, so `d · L` further consecutive
/// agreements, beyond the top exponent of the character, force agreement
/// everywhere above.
pub fn certifying_range(ps: &PrequantSpace) -> Result<(i64, i64)> {
    let chi = character(ps)?;
    let terms: Vec<(Sign, i64, Vec<u64>)> = ps.models().iter().map(expanded_term).collect();
    let Some(lo) = terms.iter().map(|t| t.1).min() else {
        return Ok((0, 0));
    };
    let top_shift = terms.iter().map(|t| t.1).max().expect("nonempty");
    let top = chi
        .laurent()
        .max_exponent()
        .map_or(top_shift, |e| e.max(top_shift));
    let period = terms
        .iter()
        .flat_map(|t| t.2.iter())
        .fold(1u64, |acc, &w| acc.lcm(&w));
    let d = ps.space().half_dim() as i64;
    let span = (d * period as i64).max(1);
    Ok((lo - 1, top + span))
}

/// Character of the symplectic cut at level `a`: the weights below `a`.
pub fn cut_character(ps: &PrequantSpace, a: &Rational) -> Result<EquivariantCharacter> {
    ensure_regular(ps.space(), a)?;
    EquivariantCharacter::from_laurent(character(ps)?.laurent().truncate_below(a))
}

/// Half-integer level just below the integer `n`, the conventional regular
/// cut level for integral data.
pub fn half_level_below(n: i64) -> Rational {
    int(n) - Rational::new(BigInt::one(), BigInt::from(2))
}
