//! Exact arithmetic: rationals, polynomials, piecewise-polynomial measures,
//! Laurent polynomials and rational functions.

pub mod laurent;
pub mod measure;
pub mod polynomial;
pub mod rational;

pub use laurent::{laurent_div_exact, LaurentPolynomial, RationalFunction};
pub use measure::{
    measure_add, measure_eval_density, measure_integrate, measure_truncate,
    PiecewisePolynomialMeasure,
};
pub use polynomial::{poly_derivative, Polynomial};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
