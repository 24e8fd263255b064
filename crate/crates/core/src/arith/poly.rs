use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::chart::Chart;
use super::scalar::{GaussScalar, Rational};
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Sparse polynomial with Gaussian-rational coefficients on a chart.
///
/// Zero coefficients are never stored. Arithmetic operators panic when the
/// charts differ; the `checked_*` methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Exponent, GaussScalar>,
}

/// Graded-lexicographic comparison, larger first when used for printing.
pub fn grlex(a: &Exponent, b: &Exponent) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Poly {
    pub fn zero(chart: &Chart) -> Self {
        Poly { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Chart, c: GaussScalar) -> Self {
        let mut p = Self::zero(chart);
        p.add_term(vec![0; chart.dim()], c);
        p
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, GaussScalar::one())
    }

    /// The coordinate function with index `k` (0-based).
    pub fn coordinate(chart: &Chart, k: usize) -> Self {
        let mut e = vec![0; chart.dim()];
        e[k] = 1;
        let mut p = Self::zero(chart);
        p.add_term(e, GaussScalar::one());
        p
    }

    pub fn var(chart: &Chart, name: &str) -> Result<Self> {
        Ok(Self::coordinate(chart, chart.require(name)?))
    }

    pub fn monomial(chart: &Chart, exp: Exponent, c: GaussScalar) -> Self {
        assert_eq!(exp.len(), chart.dim(), "exponent length must equal chart dimension");
        let mut p = Self::zero(chart);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, GaussScalar)>>(chart: &Chart, terms: I) -> Self {
        let mut p = Self::zero(chart);
        for (e, c) in terms {
            assert_eq!(e.len(), chart.dim(), "exponent length must equal chart dimension");
            p.add_term(e, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, GaussScalar> {
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

    pub fn as_constant(&self) -> Option<GaussScalar> {
        match self.terms.len() {
            0 => Some(GaussScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussScalar::is_real)
    }

    fn add_term(&mut self, e: Exponent, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn same_chart(&self, o: &Poly) -> Result<()> {
        if self.chart == o.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly> {
        self.same_chart(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Poly) -> Result<Poly> {
        self.same_chart(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly> {
        self.same_chart(o)?;
        let mut r = Poly::zero(&self.chart);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &GaussScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(&self.chart);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Formal partial derivative in the coordinate with index `k`.
    pub fn partial(&self, k: usize) -> Poly {
        let mut r = Poly::zero(&self.chart);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            r.add_term(e2, c * &GaussScalar::int(e[k] as i64));
        }
        r
    }

    pub fn partial_by_name(&self, name: &str) -> Result<Poly> {
        Ok(self.partial(self.chart.require(name)?))
    }

    /// Value at a point given as coordinates in chart order.
    pub fn eval(&self, point: &[Rational]) -> GaussScalar {
        assert_eq!(point.len(), self.chart.dim(), "point dimension must equal chart dimension");
        let mut total = GaussScalar::zero();
        for (e, c) in &self.terms {
            let mut m = Rational::one();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            total += c * &GaussScalar::real(m);
        }
        total
    }

    pub fn eval_named(&self, point: &HashMap<String, Rational>) -> Result<GaussScalar> {
        let coords = self
            .chart
            .vars()
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&coords))
    }

    /// Substitutes zero for every coordinate whose index is listed.
    pub fn vanish_vars(&self, vars: &[usize]) -> Poly {
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&k| e[k] == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussScalar) -> GaussScalar) -> Poly {
        let mut r = Poly::zero(&self.chart);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    pub fn conj(&self) -> Poly {
        self.map_coeffs(GaussScalar::conj)
    }

    pub fn re_part(&self) -> Poly {
        self.map_coeffs(|c| GaussScalar::real(c.re().clone()))
    }

    pub fn im_part(&self) -> Poly {
        self.map_coeffs(|c| GaussScalar::real(c.im().clone()))
    }

    /// Moves the polynomial to another chart, renaming variables by position.
    pub fn with_chart(&self, chart: &Chart) -> Result<Poly> {
        if chart.dim() != self.chart.dim() {
            return Err(Error::ChartMismatch);
        }
        Ok(Poly { chart: chart.clone(), terms: self.terms.clone() })
    }

    /// Terms in printing order (graded lex, largest first).
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &GaussScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn monomial_string(&self, e: &Exponent) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    self.chart.var(j).to_string()
                } else {
                    format!("{}^{}", self.chart.var(j), k)
                }
            })
            .collect();
        parts.join("*")
    }
}

fn term_string(c: &GaussScalar, mono: &str) -> String {
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return mono.to_string();
    }
    if *c == -GaussScalar::one() {
        return format!("-{mono}");
    }
    if !c.is_real() && !c.re().is_zero() {
        return format!("({c})*{mono}");
    }
    format!("{c}*{mono}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let t = term_string(c, &self.monomial_string(e));
            if k == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.checked_add(o).expect("chart mismatch in polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.checked_sub(o).expect("chart mismatch in polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.checked_mul(o).expect("chart mismatch in polynomial multiplication")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
