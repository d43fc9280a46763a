//! Laurent polynomials in one variable and quotients of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Finite sum of `c_e t^e` with integer exponents and nonzero rational
/// coefficients. The empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(exponent: i64, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// `1 - t^m`.
    pub fn one_minus_power(m: i64) -> Self {
        &Self::one() - &Self::monomial(m, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    /// Terms with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| int(**e) < *bound)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Dense ascending coefficients after dividing out the lowest power of `t`.
    fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exponent() else {
            return (0, Vec::new());
        };
        let hi = self.max_exponent().expect("nonempty");
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    /// Exact quotient `self / den`, failing unless the quotient is a
    /// Laurent polynomial.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (num_shift, mut rem) = self.to_dense();
        let (den_shift, den_dense) = den.to_dense();
        // Both dense forms have a nonzero constant term, so divisibility in the
        // Laurent ring reduces to ordinary polynomial divisibility.
        if rem.len() < den_dense.len() {
            return Err(Error::InexactDivision);
        }
        let lead = den_dense.last().expect("nonzero").clone();
        let qlen = rem.len() - den_dense.len() + 1;
        let mut quotient = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + den_dense.len() - 1];
            if top.is_zero() {
                continue;
            }
            let q = top / &lead;
            for (j, d) in den_dense.iter().enumerate() {
                let sub = &q * d;
                rem[i + j] -= sub;
            }
            quotient[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        let base = num_shift - den_shift;
        Ok(Self::from_terms(
            quotient
                .into_iter()
                .enumerate()
                .map(|(i, c)| (base + i as i64, c)),
        ))
    }

    /// Power-series coefficients of `self / den` expanded in ascending powers
    /// of `t`, for exponents `< upto`. Requires `den` nonzero.
    pub fn ascending_series(&self, den: &Self, upto: i64) -> BTreeMap<i64, Rational> {
        let mut out = BTreeMap::new();
        let (Some(num_lo), Some(den_lo)) = (self.min_exponent(), den.min_exponent()) else {
            return out;
        };
        let (_, den_dense) = den.to_dense();
        let (_, mut rem) = self.to_dense();
        let start = num_lo - den_lo;
        let count = (upto - start).max(0) as usize;
        let inv = den_dense[0].recip();
        let needed = count + den_dense.len();
        rem.resize(rem.len().max(needed), Rational::zero());
        for i in 0..count {
            let c = &rem[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den_dense.iter().enumerate() {
                let sub = &c * d;
                rem[i + j] -= sub;
            }
            out.insert(start + i as i64, c);
        }
        out
    }
}

pub fn laurent_div_exact(
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    num.div_exact(den)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Quotient of two Laurent polynomials with nonzero denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPolynomial, denominator: LaurentPolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn zero() -> Self {
        Self {
            numerator: LaurentPolynomial::zero(),
            denominator: LaurentPolynomial::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    /// Sum over the product of the denominators.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            numerator: &(&self.numerator * &other.denominator)
                + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// Exact simplification to a Laurent polynomial.
    pub fn to_laurent(&self) -> Result<LaurentPolynomial> {
        self.numerator.div_exact(&self.denominator)
    }
}
