use super::graded::{sort_sign, Form, Graded};
use super::MultiField;
use crate::arith::{Chart, GaussScalar, Poly, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Complex (ℂ-multilinear) differential form.
pub type FormField = Graded<Form>;

impl FormField {
    /// Complexified exterior derivative, `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
    pub fn d(&self) -> FormField {
        let mut r = FormField::zero(self.chart(), self.degree() + 1);
        for (idx, f) in self.comps() {
            for j in 0..self.chart().dim() {
                let df = f.partial(j);
                if df.is_zero() {
                    continue;
                }
                let mut key = Vec::with_capacity(idx.len() + 1);
                key.push(j);
                key.extend_from_slice(idx);
                if let Some(s) = sort_sign(&mut key) {
                    r.add_comp(key, if s < 0 { -df } else { df });
                }
            }
        }
        r
    }

    /// Interior product `ι_z α = α(z, ·)`.
    pub fn contract(&self, z: &MultiField) -> Result<FormField> {
        if self.chart() != z.chart() {
            return Err(Error::ChartMismatch);
        }
        if self.degree() == 0 {
            return Err(Error::Degree("cannot contract a function".into()));
        }
        let zc = z.as_vec()?;
        let mut r = FormField::zero(self.chart(), self.degree() - 1);
        for (k, c) in zc.iter().enumerate() {
            if !c.is_zero() {
                r = r.add(&self.odd_left_derivative(k).mul_fn(c));
            }
        }
        Ok(r)
    }

    /// `α(X_1, …, X_k) = ι_{X_k} ⋯ ι_{X_1} α`.
    pub fn evaluate(&self, vectors: &[MultiField]) -> Result<Poly> {
        if vectors.len() != self.degree() {
            return Err(Error::Degree(format!("{} arguments for degree {}", vectors.len(), self.degree())));
        }
        let mut a = self.clone();
        for v in vectors {
            a = a.contract(v)?;
        }
        a.as_function()
    }

    /// Lie derivative from the coordinate expression
    /// `L_Z(f dx_I) = Z(f) dx_I + f Σ_k dx_{i_1} ∧ ⋯ ∧ dZ^{i_k} ∧ ⋯ ∧ dx_{i_p}`.
    pub fn lie_derivative(&self, z: &MultiField) -> Result<FormField> {
        if self.chart() != z.chart() {
            return Err(Error::ChartMismatch);
        }
        let zc = z.as_vec()?;
        let dim = self.chart().dim();
        let mut r = FormField::zero(self.chart(), self.degree());
        for (idx, f) in self.comps() {
            r.add_comp(idx.clone(), z.apply(f)?);
            for (pos, &ik) in idx.iter().enumerate() {
                for j in 0..dim {
                    let dz = zc[ik].partial(j);
                    if dz.is_zero() {
                        continue;
                    }
                    let mut key = idx.clone();
                    key[pos] = j;
                    if let Some(s) = sort_sign(&mut key) {
                        let t = f * &dz;
                        r.add_comp(key, if s < 0 { -t } else { t });
                    }
                }
            }
        }
        Ok(r)
    }

    /// Coordinate one-form `dx_k` (0-based).
    pub fn coordinate(chart: &Chart, k: usize) -> FormField {
        Self::basis(chart, k)
    }

    /// Matrix `W_ij = ω(∂_i, ∂_j)` of a two-form at a point.
    pub fn matrix_at(&self, point: &[Rational]) -> Result<Matrix<GaussScalar>> {
        if self.degree() != 2 {
            return Err(Error::Degree(format!("expected a two-form, found degree {}", self.degree())));
        }
        Ok(skew_matrix_at(self.comps(), self.chart().dim(), point))
    }
}

pub(crate) fn skew_matrix_at(
    comps: &std::collections::BTreeMap<Vec<usize>, Poly>,
    n: usize,
    point: &[Rational],
) -> Matrix<GaussScalar> {
    let mut m = crate::linalg::zeros(n, n);
    for (idx, p) in comps {
        let v = p.eval(point);
        m[idx[1]][idx[0]] = -v.clone();
        m[idx[0]][idx[1]] = v;
    }
    m
}

/// `T_ℂ f = df₁ + i df₂` for `f = f₁ + i f₂`.
pub fn complex_differential(f: &Poly) -> FormField {
    FormField::function(f.clone()).d()
}
