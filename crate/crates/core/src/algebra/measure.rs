//! Signed measures on the line with piecewise-polynomial densities.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A signed measure on the real line whose density is a polynomial on each
/// open interval between consecutive breakpoints and zero outside them.
///
/// Values are kept in canonical form: adjacent equal pieces are merged and
/// zero pieces at either end are dropped, so two measures are equal exactly
/// when their representations are equal. The density at a breakpoint is left
/// undefined.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiecewisePolynomialMeasure {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
    degree_bound: usize,
}

impl PiecewisePolynomialMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a canonical measure. `breakpoints` must be strictly increasing
    /// and there must be exactly one piece per gap.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidData(
                "measure breakpoints must be strictly increasing".into(),
            ));
        }
        let expected = breakpoints.len().saturating_sub(1);
        if pieces.len() != expected {
            return Err(Error::InvalidData(format!(
                "measure has {} breakpoints but {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        Ok(Self::canonical(breakpoints, pieces))
    }

    /// Density `p` on `(lo, hi)` and zero elsewhere.
    pub fn on_interval(lo: Rational, hi: Rational, p: Polynomial) -> Result<Self> {
        Self::new(vec![lo, hi], vec![p])
    }

    fn canonical(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Self {
        let mut bps: Vec<Rational> = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<Polynomial> = Vec::with_capacity(pieces.len());
        let mut iter = breakpoints.into_iter();
        if let Some(first) = iter.next() {
            bps.push(first);
        }
        for (b, p) in iter.zip(pieces) {
            if ps.last() == Some(&p) {
                *bps.last_mut().expect("breakpoint present") = b;
            } else {
                ps.push(p);
                bps.push(b);
            }
        }
        // Zero density outside the support means outer zero pieces are not pieces.
        let lead = ps.iter().take_while(|p| p.is_zero()).count();
        if lead == ps.len() {
            return Self::zero();
        }
        let trail = ps.iter().rev().take_while(|p| p.is_zero()).count();
        let ps: Vec<Polynomial> = ps[lead..ps.len() - trail].to_vec();
        let bps: Vec<Rational> = bps[lead..bps.len() - trail].to_vec();
        let degree_bound = ps.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        Self {
            breakpoints: bps,
            pieces: ps,
            degree_bound,
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Closed hull of the support, `None` for the zero measure.
    pub fn support(&self) -> Option<(&Rational, &Rational)> {
        Some((self.breakpoints.first()?, self.breakpoints.last()?))
    }

    /// Polynomial in force at a non-breakpoint `t` (zero outside the support).
    pub fn piece_at(&self, t: &Rational) -> Result<Polynomial> {
        if self.breakpoints.binary_search(t).is_ok() {
            return Err(Error::NonRegularPoint(t.clone()));
        }
        let idx = self.breakpoints.partition_point(|b| b < t);
        if idx == 0 || idx == self.breakpoints.len() {
            return Ok(Polynomial::zero());
        }
        Ok(self.pieces[idx - 1].clone())
    }

    pub fn eval_density(&self, t: &Rational) -> Result<Rational> {
        Ok(self.piece_at(t)?.eval(t))
    }

    /// Density on the open interval between two adjacent points of a
    /// refinement of this measure's breakpoints.
    fn piece_between(&self, lo: &Rational, hi: &Rational) -> Polynomial {
        let mid = (lo + hi) / int(2);
        self.piece_at(&mid)
            .expect("midpoint of a refinement is never a breakpoint")
    }

    pub fn add(&self, other: &Self) -> Self {
        let grid: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pieces = grid
            .windows(2)
            .map(|w| &self.piece_between(&w[0], &w[1]) + &other.piece_between(&w[0], &w[1]))
            .collect();
        Self::canonical(grid, pieces)
    }

    pub fn neg(&self) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| -p).collect(),
            degree_bound: self.degree_bound,
        }
    }

    /// Keeps the part of the measure below `a`.
    pub fn truncate(&self, a: &Rational) -> Result<Self> {
        if self.breakpoints.binary_search(a).is_ok() {
            return Err(Error::NonRegularCut(a.clone()));
        }
        let idx = self.breakpoints.partition_point(|b| b < a);
        if idx == 0 {
            return Ok(Self::zero());
        }
        if idx == self.breakpoints.len() {
            return Ok(self.clone());
        }
        let mut bps = self.breakpoints[..idx].to_vec();
        bps.push(a.clone());
        let pieces = self.pieces[..idx].to_vec();
        Ok(Self::canonical(bps, pieces))
    }

    /// Exact total mass.
    pub fn integrate(&self) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| p.integrate(&w[0], &w[1]))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Exact mass of the closed interval `[lo, hi]`.
    pub fn integrate_over(&self, lo: &Rational, hi: &Rational) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .filter_map(|(w, p)| {
                let a = (&w[0]).max(lo);
                let b = (&w[1]).min(hi);
                (a < b).then(|| p.integrate(a, b))
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Jump `right - left` of the k-th density derivative at `t`.
    pub fn derivative_jump(&self, t: &Rational, k: usize) -> Rational {
        let idx = self.breakpoints.partition_point(|b| b < t);
        let at_break = self.breakpoints.get(idx) == Some(t);
        let piece = |i: isize| -> Polynomial {
            if i < 0 || i as usize >= self.pieces.len() {
                Polynomial::zero()
            } else {
                self.pieces[i as usize].clone()
            }
        };
        if !at_break {
            return Rational::zero();
        }
        let left = piece(idx as isize - 1).derivative(k).eval(t);
        let right = piece(idx as isize).derivative(k).eval(t);
        right - left
    }
}

pub fn measure_add(
    a: &PiecewisePolynomialMeasure,
    b: &PiecewisePolynomialMeasure,
) -> PiecewisePolynomialMeasure {
    a.add(b)
}

pub fn measure_eval_density(mu: &PiecewisePolynomialMeasure, t: &Rational) -> Result<Rational> {
    mu.eval_density(t)
}

pub fn measure_truncate(
    mu: &PiecewisePolynomialMeasure,
    a: &Rational,
) -> Result<PiecewisePolynomialMeasure> {
    mu.truncate(a)
}

pub fn measure_integrate(mu: &PiecewisePolynomialMeasure) -> Rational {
    mu.integrate()
}
