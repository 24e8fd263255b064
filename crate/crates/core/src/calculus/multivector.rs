use super::graded::{Graded, Vector};
use super::FormField;
use crate::arith::{Chart, Poly};
use crate::error::{Error, Result};

/// Complex multivector field.
pub type MultiField = Graded<Vector>;

impl MultiField {
    /// `X(f) = Σ X^k ∂_k f` for a vector field `X`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let comps = self.as_vec()?;
        let mut r = Poly::zero(self.chart());
        for (k, c) in comps.iter().enumerate() {
            if !c.is_zero() {
                r = &r + &(c * &f.partial(k));
            }
        }
        Ok(r)
    }

    /// Interior product with a one-form, acting as a left derivation:
    /// `ι_α(u∧v) = α(u)v − α(v)u`.
    pub fn interior(&self, alpha: &FormField) -> Result<MultiField> {
        if self.chart() != alpha.chart() {
            return Err(Error::ChartMismatch);
        }
        if self.degree() == 0 {
            return Err(Error::Degree("cannot contract a function".into()));
        }
        let a = alpha.as_vec()?;
        let mut r = MultiField::zero(self.chart(), self.degree() - 1);
        for (k, ak) in a.iter().enumerate() {
            if !ak.is_zero() {
                r = r.add(&self.odd_left_derivative(k).mul_fn(ak));
            }
        }
        Ok(r)
    }

    /// `m(α_1, …, α_k)` for a degree-`k` field, i.e. `ι_{α_k} ⋯ ι_{α_1} m`.
    pub fn evaluate(&self, forms: &[FormField]) -> Result<Poly> {
        if forms.len() != self.degree() {
            return Err(Error::Degree(format!("{} arguments for degree {}", forms.len(), self.degree())));
        }
        let mut m = self.clone();
        for a in forms {
            m = m.interior(a)?;
        }
        m.as_function()
    }

    /// Complexified Schouten–Nijenhuis bracket.
    ///
    /// With odd coordinates `θ_k` standing for `∂_k`,
    /// `[P,Q] = Σ_k ∂_r P/∂θ_k · ∂Q/∂x_k − (−1)^{(p−1)(q−1)} ∂_r Q/∂θ_k · ∂P/∂x_k`.
    pub fn schouten(&self, o: &MultiField) -> Result<MultiField> {
        if self.chart() != o.chart() {
            return Err(Error::ChartMismatch);
        }
        let (p, q) = (self.degree(), o.degree());
        let deg = (p + q).checked_sub(1);
        let Some(deg) = deg else {
            return Ok(MultiField::zero(self.chart(), 0));
        };
        let sign_odd = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1;
        let mut r = MultiField::zero(self.chart(), deg);
        for k in 0..self.chart().dim() {
            if p > 0 {
                let dp = self.odd_right_derivative(k);
                if !dp.is_zero() {
                    r = r.add(&dp.wedge(&o.partial(k))?);
                }
            }
            if q > 0 {
                let dq = o.odd_right_derivative(k);
                if !dq.is_zero() {
                    let t = dq.wedge(&self.partial(k))?;
                    r = if sign_odd { r.add(&t) } else { r.sub(&t) };
                }
            }
        }
        Ok(r)
    }

    /// Lie bracket of vector fields.
    pub fn lie_bracket(&self, o: &MultiField) -> Result<MultiField> {
        if self.degree() != 1 || o.degree() != 1 {
            return Err(Error::Degree("lie bracket needs vector fields".into()));
        }
        self.schouten(o)
    }

    /// Coordinate vector field `∂_k` (0-based).
    pub fn coordinate(chart: &Chart, k: usize) -> MultiField {
        Self::basis(chart, k)
    }
}
