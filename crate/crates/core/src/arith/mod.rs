//! Gaussian rationals and sparse polynomials.

mod chart;
mod parse;
mod poly;
mod scalar;

pub use chart::Chart;
pub use parse::{parse_poly, parse_rational, parse_scalar};
pub use poly::{grlex, Exponent, Poly};
pub use scalar::{rat, GaussScalar, Rational};
