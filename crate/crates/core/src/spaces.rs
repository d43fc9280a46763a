//! Fixed-point data of abstract Hamiltonian torus spaces.
//!
//! A space is recorded only through its isolated fixed points: the moment
//! value at each point, the isotropy weights of the linearized action on the
//! tangent space, and an orientation sign comparing the given orientation
//! with the complex one. Everything else in the crate is computed from this.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::algebra::rational::{int, pow, Rational};
use crate::error::{Error, Result};

/// An orientation sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_rational(self) -> Rational {
        int(self.value())
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// One isolated fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointDatum {
    pub name: String,
    /// Moment value, one entry per torus coordinate.
    pub moment: Vec<Rational>,
    /// Isotropy weights; row `r` is the weight of the `r`-th tangent coordinate.
    pub weights: Vec<Vec<i64>>,
    pub orientation_sign: Sign,
}

impl FixedPointDatum {
    pub fn new(
        name: impl Into<String>,
        moment: Vec<Rational>,
        weights: Vec<Vec<i64>>,
        orientation_sign: Sign,
    ) -> Self {
        Self {
            name: name.into(),
            moment,
            weights,
            orientation_sign,
        }
    }

    /// Circle fixed point with scalar moment value and weights.
    pub fn circle(
        name: impl Into<String>,
        moment: Rational,
        weights: &[i64],
        orientation_sign: Sign,
    ) -> Self {
        Self::new(
            name,
            vec![moment],
            weights.iter().map(|&w| vec![w]).collect(),
            orientation_sign,
        )
    }
}

/// A Hamiltonian torus space given by its fixed-point data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianSpaceData {
    torus_rank: usize,
    half_dim: usize,
    fixed_points: Vec<FixedPointDatum>,
}

impl HamiltonianSpaceData {
    pub fn new(
        torus_rank: usize,
        half_dim: usize,
        fixed_points: Vec<FixedPointDatum>,
    ) -> Result<Self> {
        if torus_rank == 0 {
            return Err(Error::InvalidData("torus rank must be at least 1".into()));
        }
        let mut names = HashSet::new();
        for p in &fixed_points {
            if !names.insert(p.name.as_str()) {
                return Err(Error::InvalidData(format!(
                    "duplicate fixed-point name `{}`",
                    p.name
                )));
            }
            if p.moment.len() != torus_rank {
                return Err(Error::InvalidData(format!(
                    "fixed point `{}` has a moment vector of length {} but the torus rank is {torus_rank}",
                    p.name,
                    p.moment.len()
                )));
            }
            if p.weights.len() != half_dim {
                return Err(Error::InvalidData(format!(
                    "fixed point `{}` has {} weight rows but the half-dimension is {half_dim}",
                    p.name,
                    p.weights.len()
                )));
            }
            for (r, row) in p.weights.iter().enumerate() {
                if row.len() != torus_rank {
                    return Err(Error::InvalidData(format!(
                        "weight row {r} of fixed point `{}` has length {} but the torus rank is {torus_rank}",
                        p.name,
                        row.len()
                    )));
                }
                if row.iter().all(|&w| w == 0) {
                    return Err(Error::InvalidData(format!(
                        "weight row {r} of fixed point `{}` is zero, so the point is not isolated",
                        p.name
                    )));
                }
            }
        }
        Ok(Self {
            torus_rank,
            half_dim,
            fixed_points,
        })
    }

    /// A space with no fixed points.
    pub fn empty(torus_rank: usize, half_dim: usize) -> Self {
        Self {
            torus_rank: torus_rank.max(1),
            half_dim,
            fixed_points: Vec::new(),
        }
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn fixed_points(&self) -> &[FixedPointDatum] {
        &self.fixed_points
    }

    pub fn len(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed_points.is_empty()
    }

    pub fn ensure_circle(&self) -> Result<()> {
        if self.torus_rank == 1 {
            Ok(())
        } else {
            Err(Error::NotCircle(self.torus_rank))
        }
    }

    /// Scalar moment values of a circle space, in fixed-point order.
    pub fn circle_moments(&self) -> Result<Vec<Rational>> {
        self.ensure_circle()?;
        Ok(self
            .fixed_points
            .iter()
            .map(|p| p.moment[0].clone())
            .collect())
    }

    /// Fixed points sorted so that the data compare as a multiset.
    pub fn sorted_fixed_points(&self) -> Vec<FixedPointDatum> {
        let mut pts = self.fixed_points.clone();
        pts.sort_by(|a, b| {
            (&a.moment, &a.weights, a.orientation_sign)
                .cmp(&(&b.moment, &b.weights, b.orientation_sign))
                .then_with(|| a.name.cmp(&b.name))
        });
        pts
    }
}

/// One summand of the linearization: the fixed point's tangent space with
/// the circle acting by `circle_weights` and moment map
/// `base + 1/2 Σ |m_r| |z_r|^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearModel {
    pub base: Rational,
    pub circle_weights: Vec<i64>,
    pub orientation_sign: Sign,
    /// Number of negative weights.
    pub sigma: usize,
}

impl LinearModel {
    pub fn new(base: Rational, circle_weights: Vec<i64>, orientation_sign: Sign) -> Result<Self> {
        if circle_weights.contains(&0) {
            return Err(Error::InvalidData("linear model with a zero weight".into()));
        }
        let sigma = circle_weights.iter().filter(|&&m| m < 0).count();
        Ok(Self {
            base,
            circle_weights,
            orientation_sign,
            sigma,
        })
    }

    pub fn dim(&self) -> usize {
        self.circle_weights.len()
    }

    /// `Π m_r` as a rational (signed).
    pub fn weight_product(&self) -> Rational {
        self.circle_weights
            .iter()
            .fold(Rational::one(), |acc, &m| acc * int(m))
    }

    /// `Π |m_r|`.
    pub fn abs_weight_product(&self) -> Rational {
        self.circle_weights
            .iter()
            .fold(Rational::one(), |acc, &m| acc * int(m.abs()))
    }

    /// `orientation_sign · (-1)^sigma`: the sign relating this model's
    /// contribution to the positive push-forward of its symplectic volume.
    pub fn local_sign(&self) -> Sign {
        self.orientation_sign * Sign::parity(self.sigma)
    }

    /// `orientation_sign / Π m_r`.
    pub fn signed_inverse_weight_product(&self) -> Rational {
        self.orientation_sign.as_rational() / self.weight_product()
    }
}

/// Restricts a torus action to the circle generated by the integer vector `xi`.
pub fn restrict_to_circle(
    space: &HamiltonianSpaceData,
    xi: &[i64],
) -> Result<HamiltonianSpaceData> {
    if xi.len() != space.torus_rank {
        return Err(Error::RankMismatch {
            left: space.torus_rank,
            right: xi.len(),
        });
    }
    let mut fixed_points = Vec::with_capacity(space.len());
    for p in &space.fixed_points {
        let mut weights = Vec::with_capacity(p.weights.len());
        for (row, w) in p.weights.iter().enumerate() {
            let pairing: i64 = w.iter().zip(xi).map(|(a, b)| a * b).sum();
            if pairing == 0 {
                return Err(Error::NonGenericDirection {
                    fixed_point: p.name.clone(),
                    row,
                });
            }
            weights.push(vec![pairing]);
        }
        let moment = p
            .moment
            .iter()
            .zip(xi)
            .fold(Rational::zero(), |acc, (m, &x)| acc + m * int(x));
        fixed_points.push(FixedPointDatum::new(
            p.name.clone(),
            vec![moment],
            weights,
            p.orientation_sign,
        ));
    }
    HamiltonianSpaceData::new(1, space.half_dim, fixed_points)
}

/// First integer direction, by increasing max-norm and then lexicographic
/// order, that pairs nontrivially with every weight row.
pub fn find_generic_direction(space: &HamiltonianSpaceData) -> Vec<i64> {
    let n = space.torus_rank as u32;
    let rows: Vec<&Vec<i64>> = space.fixed_points.iter().flat_map(|p| &p.weights).collect();
    let generic = |xi: &[i64]| {
        rows.iter()
            .all(|w| w.iter().zip(xi).map(|(a, b)| a * b).sum::<i64>() != 0)
    };
    for norm in 1i64.. {
        let side = (2 * norm + 1) as u64;
        for idx in 0..side.pow(n) {
            let mut rest = idx;
            let mut xi: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (rest % side) as i64 - norm;
                    rest /= side;
                    c
                })
                .collect();
            xi.reverse();
            if xi.iter().map(|c| c.abs()).max() == Some(norm) && generic(&xi) {
                return xi;
            }
        }
    }
    unreachable!("finitely many weight rows always admit a generic direction")
}

/// One LinearModel per fixed point of a circle space.
pub fn linearize(space: &HamiltonianSpaceData) -> Result<Vec<LinearModel>> {
    space.ensure_circle()?;
    space
        .fixed_points
        .iter()
        .map(|p| {
            LinearModel::new(
                p.moment[0].clone(),
                p.weights.iter().map(|row| row[0]).collect(),
                p.orientation_sign,
            )
        })
        .collect()
}

/// The power sums `Σ_k sign_k φ_k^j / Π_r m_rk` for `j = 0..d-1`; a compact
/// space has all of them equal to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub sums: Vec<Rational>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.sums.iter().all(Zero::is_zero)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.sums.iter().position(|s| !s.is_zero())
    }

    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            None => Ok(self),
            Some(j) => Err(Error::Inconsistent { first_failure: j }),
        }
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, s) in self.sums.iter().enumerate() {
            writeln!(f, "j={j} sum = {s}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn validate_consistency(space: &HamiltonianSpaceData) -> Result<ConsistencyReport> {
    let models = linearize(space)?;
    let sums = (0..space.half_dim)
        .map(|j| {
            models.iter().fold(Rational::zero(), |acc, m| {
                acc + pow(&m.base, j) * m.signed_inverse_weight_product()
            })
        })
        .collect();
    Ok(ConsistencyReport { sums })
}

/// Projective space `CP^d` with the circle acting with weights `a_0..a_d`
/// on homogeneous coordinates, moment map scaled by `scale`.
pub fn build_projective(weight_vector: &[i64], scale: &Rational) -> Result<HamiltonianSpaceData> {
    if *scale <= Rational::zero() {
        return Err(Error::InvalidData("scale must be positive".into()));
    }
    let mut seen = HashSet::new();
    for &a in weight_vector {
        if !seen.insert(a) {
            return Err(Error::RepeatedWeight(a));
        }
    }
    let d = weight_vector.len().saturating_sub(1);
    let fixed_points = weight_vector
        .iter()
        .enumerate()
        .map(|(j, &aj)| {
            let weights: Vec<i64> = weight_vector
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &ai)| ai - aj)
                .collect();
            FixedPointDatum::circle(format!("P{j}"), scale * int(aj), &weights, Sign::Plus)
        })
        .collect();
    HamiltonianSpaceData::new(1, d, fixed_points)
}

/// `CP^d` with the standard `T^d` action: the moment image is the simplex
/// spanned by `0` and `scale · e_i`.
pub fn build_projective_torus(d: usize, scale: &Rational) -> Result<HamiltonianSpaceData> {
    if d == 0 {
        return Err(Error::InvalidData(
            "torus projective space needs d >= 1".into(),
        ));
    }
    if *scale <= Rational::zero() {
        return Err(Error::InvalidData("scale must be positive".into()));
    }
    let unit = |i: usize| -> Vec<i64> { (0..d).map(|c| i64::from(c == i)).collect() };
    let mut fixed_points = Vec::with_capacity(d + 1);
    fixed_points.push(FixedPointDatum::new(
        "P0",
        vec![Rational::zero(); d],
        (0..d).map(unit).collect(),
        Sign::Plus,
    ));
    for i in 0..d {
        let moment = (0..d)
            .map(|c| {
                if c == i {
                    scale.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let weights = (0..=d)
            .filter(|&j| j != i + 1)
            .map(|j| {
                // Vertex e_i: edges to 0 and to e_{j-1}.
                let target = if j == 0 { vec![0; d] } else { unit(j - 1) };
                target.iter().zip(unit(i)).map(|(t, s)| t - s).collect()
            })
            .collect();
        fixed_points.push(FixedPointDatum::new(
            format!("P{}", i + 1),
            moment,
            weights,
            Sign::Plus,
        ));
    }
    HamiltonianSpaceData::new(d, d, fixed_points)
}

pub fn product(
    s1: &HamiltonianSpaceData,
    s2: &HamiltonianSpaceData,
) -> Result<HamiltonianSpaceData> {
    if s1.torus_rank != s2.torus_rank {
        return Err(Error::RankMismatch {
            left: s1.torus_rank,
            right: s2.torus_rank,
        });
    }
    let mut fixed_points = Vec::with_capacity(s1.len() * s2.len());
    for p in &s1.fixed_points {
        for q in &s2.fixed_points {
            fixed_points.push(FixedPointDatum::new(
                format!("({},{})", p.name, q.name),
                p.moment.iter().zip(&q.moment).map(|(a, b)| a + b).collect(),
                p.weights.iter().chain(&q.weights).cloned().collect(),
                p.orientation_sign * q.orientation_sign,
            ));
        }
    }
    HamiltonianSpaceData::new(s1.torus_rank, s1.half_dim + s2.half_dim, fixed_points)
}

/// Disjoint union; names are prefixed with `a:` and `b:` to stay unique.
pub fn disjoint_union(
    s1: &HamiltonianSpaceData,
    s2: &HamiltonianSpaceData,
) -> Result<HamiltonianSpaceData> {
    if s1.torus_rank != s2.torus_rank {
        return Err(Error::RankMismatch {
            left: s1.torus_rank,
            right: s2.torus_rank,
        });
    }
    if s1.half_dim != s2.half_dim {
        return Err(Error::DimensionMismatch {
            left: s1.half_dim,
            right: s2.half_dim,
        });
    }
    let tag = |prefix: &str, s: &HamiltonianSpaceData| -> Vec<FixedPointDatum> {
        s.fixed_points
            .iter()
            .map(|p| FixedPointDatum {
                name: format!("{prefix}:{}", p.name),
                ..p.clone()
            })
            .collect()
    };
    let mut fixed_points = tag("a", s1);
    fixed_points.extend(tag("b", s2));
    HamiltonianSpaceData::new(s1.torus_rank, s1.half_dim, fixed_points)
}

/// The same space with the opposite orientation.
pub fn reverse(space: &HamiltonianSpaceData) -> HamiltonianSpaceData {
    HamiltonianSpaceData {
        fixed_points: space
            .fixed_points
            .iter()
            .map(|p| FixedPointDatum {
                orientation_sign: p.orientation_sign.flip(),
                ..p.clone()
            })
            .collect(),
        ..space.clone()
    }
}

/// A quasi-free circle space with `count` isolated fixed points is cobordant
/// to `count` signed copies of the standard model; `signs[k]` is the sign of
/// the `k`-th copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiFreeSummary {
    pub count: usize,
    pub signs: Vec<Sign>,
}

pub fn quasi_free_summary(space: &HamiltonianSpaceData) -> Result<QuasiFreeSummary> {
    space.ensure_circle()?;
    for p in &space.fixed_points {
        if let Some(&w) = p.weights.iter().map(|row| &row[0]).find(|w| w.abs() != 1) {
            return Err(Error::NotQuasiFree {
                fixed_point: p.name.clone(),
                weight: w,
            });
        }
    }
    let signs = linearize(space)?
        .iter()
        .map(LinearModel::local_sign)
        .collect();
    Ok(QuasiFreeSummary {
        count: space.len(),
        signs,
    })
}
