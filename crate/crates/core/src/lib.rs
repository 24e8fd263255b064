//! Exact computations with complex Poisson bivectors and complex Dirac
//! structures on polynomial coordinate charts.
//!
//! Everything is computed over Gaussian rationals, so every identity checked
//! by the library is checked exactly.

pub mod arith;
pub mod calculus;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod normal_form;
pub mod poisson;

pub use arith::{parse_poly, rat, Chart, GaussScalar, Poly, Rational};
pub use calculus::{complex_differential, FormField, MultiField};
pub use error::{Error, Result};
