//! Complex multivector fields and differential forms with polynomial
//! coefficients.

mod form;
mod graded;
mod multivector;

pub use form::{complex_differential, FormField};
pub(crate) use form::skew_matrix_at;
pub use graded::{Form, Graded, Kind, Vector};
pub use multivector::MultiField;
