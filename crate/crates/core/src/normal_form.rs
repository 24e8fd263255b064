//! Normal forms near a submanifold `N = {fiber = 0}` of a vector-bundle chart
//! `ℝᵇ × ℝᶠ`: mixed submanifolds, Moser averaging, local models and the
//! verification of splittings.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{Chart, GaussScalar, Poly, Rational};
use crate::calculus::{FormField, MultiField};
use crate::dirac::{self, Lagrangian};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poisson::ComplexBivector;

/// A chart whose variables are split into base and fiber coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleChart {
    chart: Chart,
    base: usize,
}

impl BundleChart {
    pub fn new<S: AsRef<str>>(base: &[S], fiber: &[S]) -> Result<Self> {
        let names: Vec<&str> = base.iter().chain(fiber).map(AsRef::as_ref).collect();
        Ok(BundleChart { chart: Chart::new(names)?, base: base.len() })
    }

    /// Splits an existing chart after its first `base` variables.
    pub fn split(chart: &Chart, base: usize) -> Result<Self> {
        if base > chart.dim() {
            return Err(Error::InvalidChart(format!("{base} base variables in a chart of dimension {}", chart.dim())));
        }
        Ok(BundleChart { chart: chart.clone(), base })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base_dim(&self) -> usize {
        self.base
    }

    pub fn fiber_dim(&self) -> usize {
        self.chart.dim() - self.base
    }

    pub fn fiber_indices(&self) -> Vec<usize> {
        (self.base..self.chart.dim()).collect()
    }

    /// Chart of `N`, absent when the base is a point.
    pub fn base_chart(&self) -> Option<Chart> {
        (self.base > 0).then(|| Chart::new(self.chart.vars()[..self.base].iter().map(String::as_str)).expect("subchart"))
    }

    /// The point of `N` over `base_point`.
    pub fn zero_section(&self, base_point: &[Rational]) -> Vec<Rational> {
        base_point.iter().cloned().chain(std::iter::repeat(Rational::zero()).take(self.fiber_dim())).collect()
    }

    /// Fiber degree of a monomial plus the number of fiber differentials.
    pub fn weight(&self, exponent: &[u32], form_indices: &[usize]) -> u32 {
        exponent[self.base..].iter().sum::<u32>() + form_indices.iter().filter(|&&k| k >= self.base).count() as u32
    }

    /// Jacobian of the projection onto the base, `b × (b + f)`.
    pub fn projection(&self) -> Matrix<GaussScalar> {
        (0..self.base)
            .map(|r| (0..self.chart.dim()).map(|c| if r == c { GaussScalar::one() } else { GaussScalar::zero() }).collect())
            .collect()
    }

    /// Jacobian of the inclusion of `N`, `(b + f) × b`.
    pub fn inclusion(&self) -> Matrix<GaussScalar> {
        linalg::transpose(&self.projection(), self.chart.dim())
    }
}

/// A closed two-form on the bundle chart meant to extend a fiberwise
/// nondegenerate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub form: FormField,
}

impl Extension {
    pub fn new(bundle: &BundleChart, form: FormField) -> Result<Self> {
        if form.chart() != bundle.chart() {
            return Err(Error::ChartMismatch);
        }
        if form.degree() != 2 {
            return Err(Error::Degree(format!("an extension is a two-form, found degree {}", form.degree())));
        }
        Ok(Extension { form })
    }

    pub fn matrix_at(&self, point: &[Rational]) -> Matrix<GaussScalar> {
        self.form.matrix_at(point).expect("degree two")
    }
}

fn fiber_block<T: Clone>(m: &Matrix<T>, base: usize) -> Matrix<T> {
    m[base..].iter().map(|r| r[base..].to_vec()).collect()
}

/// Per-point verdicts of [`extension_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub closed: bool,
    /// Fiber block of the form at `(b, 0)` is invertible, per base point.
    pub fiber_nondegenerate: Vec<bool>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.closed && self.fiber_nondegenerate.iter().all(|&b| b)
    }
}

pub fn extension_check(bundle: &BundleChart, ext: &Extension, base_points: &[Vec<Rational>]) -> ExtensionReport {
    let fiber_nondegenerate = base_points
        .iter()
        .map(|b| {
            let block = fiber_block(&ext.matrix_at(&bundle.zero_section(b)), bundle.base_dim());
            linalg::rank(&block, bundle.fiber_dim()) == bundle.fiber_dim()
        })
        .collect();
    ExtensionReport { closed: ext.form.d().is_zero(), fiber_nondegenerate }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedReport {
    /// Components `π₂(dy_a, dx_j)` restricted to `N`; all zero iff `π₂(Ann TN) = 0`.
    pub imaginary_witnesses: Vec<((usize, usize), Poly)>,
    /// `π₁(Ann TN) ⊕ TN = TM` at each sampled point of `N`.
    pub direct_sum: Vec<bool>,
    /// `π(Ann T_ℂN) ⊕ T_ℂN = T_ℂM` at each sampled point of `N`.
    pub cosymplectic: Vec<bool>,
}

impl MixedReport {
    pub fn imaginary_part_annihilates(&self) -> bool {
        self.imaginary_witnesses.is_empty()
    }

    pub fn is_mixed(&self) -> bool {
        self.imaginary_part_annihilates() && self.direct_sum.iter().all(|&b| b)
    }

    pub fn is_cosymplectic(&self) -> bool {
        self.cosymplectic.iter().all(|&b| b)
    }
}

pub fn mixed_check(pi: &ComplexBivector, bundle: &BundleChart, base_points: &[Vec<Rational>]) -> Result<MixedReport> {
    if pi.chart() != bundle.chart() {
        return Err(Error::ChartMismatch);
    }
    let n = bundle.chart().dim();
    let fibers = bundle.fiber_indices();
    let mut imaginary_witnesses = Vec::new();
    for &a in &fibers {
        for j in 0..n {
            let w = pi.entry(a, j).im_part().vanish_vars(&fibers);
            if !w.is_zero() {
                imaginary_witnesses.push(((a, j), w));
            }
        }
    }
    let f = bundle.fiber_dim();
    let (direct_sum, cosymplectic) = base_points
        .par_iter()
        .map(|b| {
            let p = fiber_block(&pi.matrix_at(&bundle.zero_section(b)), bundle.base_dim());
            let re: Matrix<Rational> = p.iter().map(|r| r.iter().map(|x| x.re().clone()).collect()).collect();
            (linalg::rank(&re, f) == f, linalg::rank(&p, f) == f)
        })
        .unzip();
    Ok(MixedReport { imaginary_witnesses, direct_sum, cosymplectic })
}

/// `∫₀¹ τ⁻¹ κ*_τ β dτ`: every monomial is divided by its fiber weight.
pub fn moser_average(bundle: &BundleChart, beta: &FormField) -> Result<FormField> {
    if beta.chart() != bundle.chart() {
        return Err(Error::ChartMismatch);
    }
    let mut comps = Vec::new();
    for (idx, coeff) in beta.comps() {
        let mut terms = Vec::new();
        for (e, c) in coeff.terms() {
            let w = bundle.weight(e, idx);
            if w == 0 {
                let basis: Vec<String> = idx.iter().map(|&k| format!("d{}", bundle.chart().var(k))).collect();
                let mono = coeff.monomial_string(e);
                let mono = if mono.is_empty() { String::from("1") } else { mono };
                return Err(Error::WeightZero(format!("{mono} {}", basis.join("∧")).trim().to_string()));
            }
            terms.push((e.clone(), c * &GaussScalar::real(Rational::new(1.into(), w.into()))));
        }
        comps.push((idx.clone(), Poly::from_terms(bundle.chart(), terms)));
    }
    FormField::from_comps(bundle.chart(), beta.degree(), comps)
}

/// `e^{W} p^! gr(π_N)` at a point, with `π_N` given by its matrix at the base point.
pub fn local_model_from_matrix(
    bundle: &BundleChart,
    pi_n: &Matrix<GaussScalar>,
    w: &Matrix<GaussScalar>,
) -> Result<Lagrangian> {
    let base = dirac::graph_bivector(pi_n)?;
    let pulled = dirac::backward_from(&bundle.projection(), bundle.chart().dim(), &base)?;
    dirac::b_field(w, &pulled)
}

/// Result of [`local_model_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    pub lagrangian: Lagrangian,
    /// At zero-section points: `L ∩ T_ℂ = 0`.
    pub is_graph: Option<bool>,
    /// At zero-section points: the bivector of `L` is `π_N ⊕ W_ff⁻¹`, with
    /// `W_ff` the fiber block of the extension. Expected only when `W` has no
    /// base or mixed components along `N`.
    pub matches_sum: Option<bool>,
}

pub fn local_model_at(
    bundle: &BundleChart,
    pi_n: Option<&ComplexBivector>,
    ext: &Extension,
    point: &[Rational],
) -> Result<LocalModel> {
    let b = bundle.base_dim();
    if point.len() != bundle.chart().dim() {
        return Err(Error::Dimension(format!("point has {} coordinates, chart has {}", point.len(), bundle.chart().dim())));
    }
    let pn = match pi_n {
        Some(p) => {
            if p.dim() != b {
                return Err(Error::Dimension(format!("base bivector lives in dimension {}, base has {b}", p.dim())));
            }
            p.matrix_at(&point[..b])
        }
        None if b == 0 => Vec::new(),
        None => return Err(Error::Dimension("a base bivector is required over a positive-dimensional base".into())),
    };
    let w = ext.matrix_at(point);
    let lagrangian = local_model_from_matrix(bundle, &pn, &w)?;
    let on_n = point[b..].iter().all(Zero::is_zero);
    let (is_graph, matches_sum) = if on_n {
        let biv = lagrangian.as_bivector();
        let expected = linalg::inverse(&fiber_block(&w, b)).map(|inv| block_diag(&pn, &inv));
        (Some(biv.is_some()), Some(biv.is_some() && biv == expected))
    } else {
        (None, None)
    };
    Ok(LocalModel { lagrangian, is_graph, matches_sum })
}

fn block_diag(a: &Matrix<GaussScalar>, b: &Matrix<GaussScalar>) -> Matrix<GaussScalar> {
    let (m, k) = (a.len(), b.len());
    let mut out = linalg::zeros(m + k, m + k);
    for r in 0..m {
        out[r][..m].clone_from_slice(&a[r]);
    }
    for r in 0..k {
        out[m + r][m..].clone_from_slice(&b[r]);
    }
    out
}

/// A section `X + ξ₁ + iξ₂` of `gr(π) ⊗ ℂ` with `X` Euler-like along `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon {
    pub x: MultiField,
    pub xi1: FormField,
    pub xi2: FormField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingPoint {
    pub point: Vec<Rational>,
    /// `e^{B+iω} p^! gr(π_N) = gr(π)` at the point.
    pub model_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub b: FormField,
    pub omega: FormField,
    pub warnings: Vec<String>,
    pub points: Vec<SplittingPoint>,
    /// Fiber block of `B + iω` at `(b, 0)` equals the Dirac form `P_ff⁻¹` of
    /// the transverse structure, per sampled base point.
    pub fiber_matches_dirac_form: Vec<bool>,
    /// Fiber block of `B + iω` at `(b, 0)` equals `Ω̃ = −P_ff⁻¹`, the form with
    /// `Ω̃(π♯θ, π♯θ') = π(θ, θ')`.
    pub fiber_matches_leaf_form: Vec<bool>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| p.model_matches) && self.fiber_matches_dirac_form.iter().all(|&b| b)
    }

    /// `B + iω`.
    pub fn extension(&self) -> FormField {
        self.b.add(&self.omega.scale(&GaussScalar::i()))
    }
}

fn check_epsilon(pi: &ComplexBivector, bundle: &BundleChart, eps: &Epsilon) -> Result<Vec<String>> {
    let chart = bundle.chart();
    if eps.x.chart() != chart || eps.xi1.chart() != chart || eps.xi2.chart() != chart {
        return Err(Error::ChartMismatch);
    }
    if eps.x.degree() != 1 || eps.xi1.degree() != 1 || eps.xi2.degree() != 1 {
        return Err(Error::Degree("ε needs a vector field and two one-forms".into()));
    }
    let theta = eps.xi1.add(&eps.xi2.scale(&GaussScalar::i()));
    let residual = pi.sharp(&theta)?.sub(&eps.x);
    if !residual.is_zero() {
        return Err(Error::SectionNotInGraph(format!("π♯(ξ₁ + iξ₂) − X = {residual}")));
    }
    let fibers = bundle.fiber_indices();
    if !eps.xi1.vanish_vars(&fibers).is_zero() || !eps.xi2.vanish_vars(&fibers).is_zero() {
        return Err(Error::SectionNotInGraph("ξ₁ + iξ₂ does not vanish on N".into()));
    }
    let xs = eps.x.as_vec()?;
    let mut warnings = Vec::new();
    for (k, c) in xs.iter().enumerate() {
        if !c.vanish_vars(&fibers).is_zero() {
            return Err(Error::NotEulerLike(format!("component {} does not vanish on N", chart.var(k))));
        }
    }
    for &a in &fibers {
        for &b in &fibers {
            let expected = if a == b { Poly::one(chart) } else { Poly::zero(chart) };
            if xs[a].partial(b).vanish_vars(&fibers) != expected {
                return Err(Error::NotEulerLike(format!(
                    "∂X^{}/∂{} on N is not {}",
                    chart.var(a),
                    chart.var(b),
                    if a == b { 1 } else { 0 }
                )));
            }
        }
    }
    let linear: u32 = 1;
    for &a in &fibers {
        if xs[a].terms().keys().any(|e| bundle.weight(e, &[]) > linear) {
            warnings.push(format!("X^{} has terms of order > 1 in the fiber variables", chart.var(a)));
        }
    }
    Ok(warnings)
}

/// Verifies that the averaged extension `B + iω` built from `ε` identifies the
/// local model of `π` along `N` with `π` itself at the given points.
pub fn splitting_check(
    pi: &ComplexBivector,
    bundle: &BundleChart,
    eps: &Epsilon,
    points: &[Vec<Rational>],
) -> Result<SplittingReport> {
    if pi.chart() != bundle.chart() {
        return Err(Error::ChartMismatch);
    }
    let warnings = check_epsilon(pi, bundle, eps)?;
    let b = moser_average(bundle, &eps.xi1.d())?;
    let omega = moser_average(bundle, &eps.xi2.d())?;
    let ext = b.add(&omega.scale(&GaussScalar::i()));
    let base = bundle.base_dim();
    let n = bundle.chart().dim();
    let induced = |bp: &[Rational]| -> Result<Matrix<GaussScalar>> {
        let l = dirac::graph_bivector(&pi.matrix_at(&bundle.zero_section(bp)))?;
        dirac::backward(&bundle.inclusion(), &l)?
            .as_bivector()
            .ok_or_else(|| Error::Shape("the structure induced on N is not a bivector".into()))
    };
    let checks: Vec<Result<(SplittingPoint, bool, bool)>> = points
        .par_iter()
        .map(|pt| {
            if pt.len() != n {
                return Err(Error::Dimension(format!("point has {} coordinates, chart has {n}", pt.len())));
            }
            let w = ext.matrix_at(pt)?;
            let model = local_model_from_matrix(bundle, &induced(&pt[..base])?, &w)?;
            let model_matches = model == dirac::graph_bivector(&pi.matrix_at(pt))?;
            let zero = bundle.zero_section(&pt[..base]);
            let w0 = fiber_block(&ext.matrix_at(&zero)?, base);
            let pff = fiber_block(&pi.matrix_at(&zero), base);
            let (dirac_ok, leaf_ok) = match linalg::inverse(&pff) {
                Some(inv) => (w0 == inv, w0 == linalg::mat_neg(&inv)),
                None => (false, false),
            };
            Ok((SplittingPoint { point: pt.clone(), model_matches }, dirac_ok, leaf_ok))
        })
        .collect();
    let mut report = SplittingReport {
        b,
        omega,
        warnings,
        points: Vec::new(),
        fiber_matches_dirac_form: Vec::new(),
        fiber_matches_leaf_form: Vec::new(),
    };
    for c in checks {
        let (p, d, l) = c?;
        report.points.push(p);
        report.fiber_matches_dirac_form.push(d);
        report.fiber_matches_leaf_form.push(l);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat};

    fn bundle4() -> BundleChart {
        BundleChart::new(&["u", "v"], &["q", "p"]).unwrap()
    }

    fn one_form(chart: &Chart, coeffs: &[&str]) -> FormField {
        FormField::from_vec(chart, coeffs.iter().map(|c| parse_poly(c, chart).unwrap()).collect())
    }

    fn two_form(chart: &Chart, terms: &[(usize, usize, &str)]) -> FormField {
        FormField::from_comps(chart, 2, terms.iter().map(|&(i, j, c)| (vec![i - 1, j - 1], parse_poly(c, chart).unwrap()))).unwrap()
    }

    fn euler(chart: &Chart) -> MultiField {
        MultiField::from_vec(chart, ["0", "0", "q", "p"].iter().map(|c| parse_poly(c, chart).unwrap()).collect())
    }

    fn split_pi(chart: &Chart) -> ComplexBivector {
        ComplexBivector::parse(chart, &[(1, 2, "u"), (3, 4, "1")]).unwrap()
    }

    fn pts() -> Vec<Vec<Rational>> {
        (0..5).map(|k| vec![rat(k, 3), rat(1 - k, 2), rat(2 * k - 3, 5), rat(k * k, 7)]).collect()
    }

    #[test]
    fn weights() {
        let c = bundle4();
        let ch = c.chart();
        assert_eq!(moser_average(&c, &two_form(ch, &[(3, 4, "2")])).unwrap(), two_form(ch, &[(3, 4, "1")]));
        let d = one_form(ch, &["0", "0", "-p", "q"]).d();
        assert_eq!(moser_average(&c, &d).unwrap(), two_form(ch, &[(3, 4, "1")]));
        assert_eq!(moser_average(&c, &two_form(ch, &[(1, 3, "q^2")])).unwrap(), two_form(ch, &[(1, 3, "1/3*q^2")]));
        assert_eq!(
            moser_average(&c, &two_form(ch, &[(1, 2, "u")])),
            Err(Error::WeightZero("u du∧dv".into()))
        );
    }

    #[test]
    fn mixed_examples() {
        let c = bundle4();
        let base = vec![vec![rat(1, 2), rat(-1, 1)], vec![rat(0, 1), rat(3, 1)]];
        let r = mixed_check(&split_pi(c.chart()), &c, &base).unwrap();
        assert!(r.is_mixed() && r.is_cosymplectic());
        let diag = ComplexBivector::parse(c.chart(), &[(1, 2, "u"), (3, 4, "1+i")]).unwrap();
        let r = mixed_check(&diag, &c, &base).unwrap();
        assert!(!r.is_mixed() && r.is_cosymplectic());
        assert_eq!(r.imaginary_witnesses.len(), 2);
    }

    #[test]
    fn local_model_over_a_point() {
        let c = BundleChart::new::<&str>(&[], &["q", "p"]).unwrap();
        let ext = Extension::new(&c, two_form(c.chart(), &[(1, 2, "1")])).unwrap();
        let m = local_model_at(&c, None, &ext, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(m.is_graph, Some(true));
        assert_eq!(m.matches_sum, Some(true));
        let p = m.lagrangian.as_bivector().unwrap();
        assert_eq!(p[0][1], GaussScalar::int(-1));
    }

    #[test]
    fn degenerate_extension() {
        let c = BundleChart::new::<&str>(&[], &["q", "p"]).unwrap();
        let ext = Extension::new(&c, two_form(c.chart(), &[(1, 2, "q")])).unwrap();
        let m = local_model_at(&c, None, &ext, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert!(m.lagrangian.is_lagrangian());
        assert_eq!(m.is_graph, Some(false));
        assert!(!extension_check(&c, &ext, &[vec![]]).passed());
    }

    #[test]
    fn split_product_with_matching_section() {
        let c = bundle4();
        let ch = c.chart();
        let eps = Epsilon { x: euler(ch), xi1: one_form(ch, &["0", "0", "p", "-q"]), xi2: FormField::zero(ch, 1) };
        let r = splitting_check(&split_pi(ch), &c, &eps, &pts()).unwrap();
        assert!(r.passed());
        assert!(r.warnings.is_empty());
        assert_eq!(r.b, two_form(ch, &[(4, 3, "1")]));
        assert!(r.omega.is_zero());
        assert!(r.fiber_matches_leaf_form.iter().all(|&b| !b));
    }

    #[test]
    fn opposite_section_is_refused() {
        let c = bundle4();
        let ch = c.chart();
        let eps = Epsilon { x: euler(ch), xi1: one_form(ch, &["0", "0", "-p", "q"]), xi2: FormField::zero(ch, 1) };
        assert!(matches!(splitting_check(&split_pi(ch), &c, &eps, &pts()), Err(Error::SectionNotInGraph(_))));
    }

    #[test]
    fn imaginary_symplectic_fiber() {
        let c = BundleChart::new::<&str>(&[], &["q", "p"]).unwrap();
        let ch = c.chart();
        let pi = ComplexBivector::parse(ch, &[(1, 2, "i")]).unwrap();
        let x = MultiField::from_vec(ch, vec![Poly::coordinate(ch, 0), Poly::coordinate(ch, 1)]);
        let eps = Epsilon { x, xi1: FormField::zero(ch, 1), xi2: one_form(ch, &["-p", "q"]) };
        let pts = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(-2, 3)]];
        let r = splitting_check(&pi, &c, &eps, &pts).unwrap();
        assert!(r.passed());
        assert!(r.b.is_zero());
        assert_eq!(r.omega, two_form(ch, &[(1, 2, "1")]));
    }

    #[test]
    fn higher_order_euler_terms_warn() {
        let c = BundleChart::new::<&str>(&[], &["q", "p"]).unwrap();
        let ch = c.chart();
        let pi = ComplexBivector::parse(ch, &[(1, 2, "1")]).unwrap();
        let xi1 = one_form(ch, &["p", "-q-q^2"]);
        let x = pi.sharp(&xi1).unwrap();
        let eps = Epsilon { x, xi1, xi2: FormField::zero(ch, 1) };
        let r = splitting_check(&pi, &c, &eps, &[vec![rat(0, 1), rat(0, 1)]]).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }
}
