use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::arith::{Chart, GaussScalar, Poly, Rational};
use crate::error::{Error, Result};

/// Marker for multivector fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vector;

/// Marker for differential forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Form;

pub trait Kind: Clone + fmt::Debug + PartialEq + Eq {
    /// Prints the basis element with the given 0-based index.
    fn basis_name(chart: &Chart, k: usize) -> String;
}

impl Kind for Vector {
    fn basis_name(chart: &Chart, k: usize) -> String {
        format!("d/d{}", chart.var(k))
    }
}

impl Kind for Form {
    fn basis_name(chart: &Chart, k: usize) -> String {
        format!("d{}", chart.var(k))
    }
}

/// Homogeneous element of the exterior algebra over polynomial functions.
///
/// Components are keyed by strictly increasing 0-based index tuples; zero
/// coefficients are never stored. Degree zero holds a single function under
/// the empty key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graded<K> {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
    kind: PhantomData<K>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeat.
pub(crate) fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for a in 1..idx.len() {
        let mut b = a;
        while b > 0 && idx[b - 1] > idx[b] {
            idx.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl<K: Kind> Graded<K> {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Graded { chart: chart.clone(), degree, comps: BTreeMap::new(), kind: PhantomData }
    }

    pub fn function(f: Poly) -> Self {
        let mut g = Self::zero(f.chart(), 0);
        g.add_comp(vec![], f);
        g
    }

    /// Builds from components with arbitrary (0-based) index order; indices are
    /// sorted with the permutation sign and repeated indices dropped.
    pub fn from_comps<I: IntoIterator<Item = (Vec<usize>, Poly)>>(chart: &Chart, degree: usize, comps: I) -> Result<Self> {
        let mut g = Self::zero(chart, degree);
        for (mut idx, p) in comps {
            if idx.len() != degree {
                return Err(Error::Degree(format!("index tuple of length {} in degree {degree}", idx.len())));
            }
            if idx.iter().any(|&k| k >= chart.dim()) {
                return Err(Error::Dimension(format!("index out of range for chart of dimension {}", chart.dim())));
            }
            if p.chart() != chart {
                return Err(Error::ChartMismatch);
            }
            if let Some(s) = sort_sign(&mut idx) {
                g.add_comp(idx, if s < 0 { -p } else { p });
            }
        }
        Ok(g)
    }

    /// Degree-one element `Σ c_k e_k`.
    pub fn from_vec(chart: &Chart, coeffs: Vec<Poly>) -> Self {
        assert_eq!(coeffs.len(), chart.dim());
        let mut g = Self::zero(chart, 1);
        for (k, p) in coeffs.into_iter().enumerate() {
            g.add_comp(vec![k], p);
        }
        g
    }

    /// The basis element `e_k` (0-based).
    pub fn basis(chart: &Chart, k: usize) -> Self {
        let mut g = Self::zero(chart, 1);
        g.add_comp(vec![k], Poly::one(chart));
        g
    }

    pub(crate) fn add_comp(&mut self, idx: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.comps.remove(&idx) {
            Some(q) => {
                let s = &q + &p;
                if !s.is_zero() {
                    self.comps.insert(idx, s);
                }
            }
            None => {
                self.comps.insert(idx, p);
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn comps(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient on a strictly increasing index tuple.
    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.comps.get(idx).cloned().unwrap_or_else(|| Poly::zero(&self.chart))
    }

    /// Coefficient on an arbitrary index tuple, with the permutation sign.
    pub fn coeff_signed(&self, idx: &[usize]) -> Poly {
        let mut v = idx.to_vec();
        match sort_sign(&mut v) {
            None => Poly::zero(&self.chart),
            Some(1) => self.coeff(&v),
            Some(_) => -self.coeff(&v),
        }
    }

    /// The function of a degree-0 element.
    pub fn as_function(&self) -> Result<Poly> {
        if self.degree != 0 {
            return Err(Error::Degree(format!("expected degree 0, found {}", self.degree)));
        }
        Ok(self.coeff(&[]))
    }

    /// Coefficients of a degree-1 element in index order.
    pub fn as_vec(&self) -> Result<Vec<Poly>> {
        if self.degree != 1 {
            return Err(Error::Degree(format!("expected degree 1, found {}", self.degree)));
        }
        Ok((0..self.chart.dim()).map(|k| self.coeff(&[k])).collect())
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.chart != o.chart {
            return Err(Error::ChartMismatch);
        }
        if self.degree != o.degree {
            return Err(Error::Degree(format!("degrees {} and {} differ", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        for (k, p) in &o.comps {
            r.add_comp(k.clone(), p.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("incompatible graded operands")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("incompatible graded operands")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|p| -p)
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &Poly) -> Self {
        self.map_coeffs(|p| p * f)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut r = Self::zero(&self.chart, self.degree);
        for (k, p) in &self.comps {
            r.add_comp(k.clone(), f(p));
        }
        r
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(Poly::conj)
    }

    /// Real and imaginary parts, both with real coefficients.
    pub fn decompose(&self) -> (Self, Self) {
        (self.map_coeffs(Poly::re_part), self.map_coeffs(Poly::im_part))
    }

    /// `re + i·im`.
    pub fn recompose(re: &Self, im: &Self) -> Self {
        re.add(&im.scale(&GaussScalar::i()))
    }

    pub fn is_real(&self) -> bool {
        self.comps.values().all(Poly::is_real)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.chart != o.chart {
            return Err(Error::ChartMismatch);
        }
        let mut r = Self::zero(&self.chart, self.degree + o.degree);
        for (a, p) in &self.comps {
            for (b, q) in &o.comps {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(s) = sort_sign(&mut idx) {
                    let pq = p * q;
                    r.add_comp(idx, if s < 0 { -pq } else { pq });
                }
            }
        }
        Ok(r)
    }

    /// Coefficient-wise partial derivative in coordinate `k`.
    pub fn partial(&self, k: usize) -> Self {
        self.map_coeffs(|p| p.partial(k))
    }

    /// Left derivative with respect to the odd generator `e_k`.
    pub fn odd_left_derivative(&self, k: usize) -> Self {
        let mut r = Self::zero(&self.chart, self.degree.saturating_sub(1));
        for (idx, p) in &self.comps {
            if let Some(pos) = idx.iter().position(|&j| j == k) {
                let mut rest = idx.clone();
                rest.remove(pos);
                r.add_comp(rest, if pos % 2 == 1 { -p } else { p.clone() });
            }
        }
        r
    }

    /// Right derivative with respect to the odd generator `e_k`.
    pub fn odd_right_derivative(&self, k: usize) -> Self {
        let mut r = Self::zero(&self.chart, self.degree.saturating_sub(1));
        for (idx, p) in &self.comps {
            if let Some(pos) = idx.iter().position(|&j| j == k) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let moves = idx.len() - 1 - pos;
                r.add_comp(rest, if moves % 2 == 1 { -p } else { p.clone() });
            }
        }
        r
    }

    /// Coefficients evaluated at a point.
    pub fn eval(&self, point: &[Rational]) -> BTreeMap<Vec<usize>, GaussScalar> {
        self.comps.iter().map(|(k, p)| (k.clone(), p.eval(point))).filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect()
    }

    /// Substitutes zero for the listed coordinates in every coefficient.
    pub fn vanish_vars(&self, vars: &[usize]) -> Self {
        self.map_coeffs(|p| p.vanish_vars(vars))
    }

    /// Readable text such as `(y + i*z)*d/dy^d/dz`.
    pub fn display(&self) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (idx, p)) in self.comps.iter().enumerate() {
            let basis = idx.iter().map(|&k| K::basis_name(&self.chart, k)).collect::<Vec<_>>().join("^");
            let c = p.to_string();
            let term = if idx.is_empty() {
                c
            } else if c == "1" {
                basis
            } else if c == "-1" {
                format!("-{basis}")
            } else if !c.get(1..).unwrap_or("").contains([' ', '+', '-']) {
                format!("{c}*{basis}")
            } else {
                format!("({c})*{basis}")
            };
            match (k, term.strip_prefix('-')) {
                (0, _) => out += &term,
                (_, Some(rest)) if !idx.is_empty() => out += &format!(" - {rest}"),
                _ => out += &format!(" + {term}"),
            }
        }
        out
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded[{}]({})", self.degree, self.display())
    }
}
