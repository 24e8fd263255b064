//! Complex Poisson bivectors: integrability, brackets, Hamiltonian fields and
//! the standard constructions.
//!
//! Convention: `π♯α = ι_α π` with `(u∧v)♯α = α(u)v − α(v)u`, so that
//! `π(α, β) = β(π♯α)` and `{f, g} = π(df, dg)`.

use std::fmt;

use crate::arith::{parse_poly, Chart, GaussScalar, Poly, Rational};
use crate::calculus::{complex_differential, skew_matrix_at, FormField, MultiField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `π = π₁ + iπ₂` with its real and imaginary parts cached.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBivector {
    body: MultiField,
    re: MultiField,
    im: MultiField,
}

/// Which half of the complex Jacobi equations a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Real,
    Imaginary,
}

/// One polynomial of the Jacobi system for the index triple `i < j < k`
/// (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeResidual {
    pub triple: (usize, usize, usize),
    pub part: Part,
    pub value: Poly,
}

impl ComplexBivector {
    pub fn new(body: MultiField) -> Result<Self> {
        if body.degree() != 2 {
            return Err(Error::Degree(format!("a bivector has degree 2, found {}", body.degree())));
        }
        let (re, im) = body.decompose();
        Ok(ComplexBivector { body, re, im })
    }

    pub fn from_parts(re: &MultiField, im: &MultiField) -> Result<Self> {
        Self::new(MultiField::recompose(re, im))
    }

    /// Builds `Σ c_ij ∂_i∧∂_j` from `(i, j, coefficient)` with 1-based indices.
    pub fn parse(chart: &Chart, terms: &[(usize, usize, &str)]) -> Result<Self> {
        let comps = terms
            .iter()
            .map(|&(i, j, s)| {
                if i == 0 || j == 0 {
                    return Err(Error::Dimension("indices are 1-based".into()));
                }
                Ok((vec![i - 1, j - 1], parse_poly(s, chart)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(MultiField::from_comps(chart, 2, comps)?)
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::new(MultiField::zero(chart, 2)).expect("degree 2")
    }

    pub fn body(&self) -> &MultiField {
        &self.body
    }

    pub fn re(&self) -> &MultiField {
        &self.re
    }

    pub fn im(&self) -> &MultiField {
        &self.im
    }

    pub fn chart(&self) -> &Chart {
        self.body.chart()
    }

    pub fn dim(&self) -> usize {
        self.chart().dim()
    }

    /// Full antisymmetric coefficient `π^{ab} = π(dx_a, dx_b)`.
    pub fn entry(&self, a: usize, b: usize) -> Poly {
        self.body.coeff_signed(&[a, b])
    }

    /// `π♯α = ι_α π`.
    pub fn sharp(&self, alpha: &FormField) -> Result<MultiField> {
        self.body.interior(alpha)
    }

    /// `π(α, β) = β(π♯α)`.
    pub fn pair(&self, a: &FormField, b: &FormField) -> Result<Poly> {
        self.body.evaluate(&[a.clone(), b.clone()])
    }

    /// `{f, g} = π(T_ℂf, T_ℂg)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.pair(&complex_differential(f), &complex_differential(g))
    }

    /// `[π, π]`.
    pub fn jacobi_residual(&self) -> MultiField {
        self.body.schouten(&self.body).expect("same chart")
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobi_residual().is_zero()
    }

    /// `([π₁, π₂], [π₁, π₁] − [π₂, π₂])`.
    pub fn pair_conditions(&self) -> (MultiField, MultiField) {
        let s = |a: &MultiField, b: &MultiField| a.schouten(b).expect("same chart");
        (s(&self.re, &self.im), s(&self.re, &self.re).sub(&s(&self.im, &self.im)))
    }

    /// Real and imaginary Jacobi equations per index triple, in the order
    /// `(i, j, k)` lexicographic with the real equation first.
    pub fn jacobi_pde_residuals(&self) -> Vec<PdeResidual> {
        let n = self.dim();
        let p1 = |a: usize, b: usize| self.re.coeff_signed(&[a, b]);
        let p2 = |a: usize, b: usize| self.im.coeff_signed(&[a, b]);
        let zero = Poly::zero(self.chart());
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut real = zero.clone();
                    let mut imag = zero.clone();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for l in 0..n {
                            let (r1, r2) = (p1(a, l), p2(a, l));
                            if r1.is_zero() && r2.is_zero() {
                                continue;
                            }
                            let d1 = p1(b, c).partial(l);
                            let d2 = p2(b, c).partial(l);
                            real = &(&real + &(&r1 * &d1)) - &(&r2 * &d2);
                            imag = &(&imag + &(&r1 * &d2)) + &(&r2 * &d1);
                        }
                    }
                    out.push(PdeResidual { triple: (i, j, k), part: Part::Real, value: real });
                    out.push(PdeResidual { triple: (i, j, k), part: Part::Imaginary, value: imag });
                }
            }
        }
        out
    }

    /// `X_h` with `X_h(f) = {f, h}`, i.e. `X_h = −π♯(T_ℂh)`.
    pub fn hamiltonian(&self, h: &Poly) -> Result<MultiField> {
        Ok(self.sharp(&complex_differential(h))?.neg())
    }

    /// `π♯(T_ℂc)`; zero exactly when `c` is a Casimir function.
    pub fn casimir_residual(&self, c: &Poly) -> Result<MultiField> {
        self.sharp(&complex_differential(c))
    }

    /// `[α, β]_π = L_{π♯α}β − L_{π♯β}α − T_ℂ π(α, β)`.
    pub fn cotangent_bracket(&self, a: &FormField, b: &FormField) -> Result<FormField> {
        anchored_bracket(&|x: &FormField| self.sharp(x), a, b)
    }

    /// Complex coefficient matrix `P_ij = π(dx_i, dx_j)` at a point.
    pub fn matrix_at(&self, point: &[Rational]) -> Matrix<GaussScalar> {
        skew_matrix_at(self.body.comps(), self.dim(), point)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.body.conj()).expect("degree 2")
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        Self::new(self.body.scale(c)).expect("degree 2")
    }
}

impl fmt::Debug for ComplexBivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexBivector({})", self.body)
    }
}

impl fmt::Display for ComplexBivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// `L_{ρα}β − L_{ρβ}α − d(β(ρα))` for an arbitrary anchor `ρ`.
pub fn anchored_bracket(
    anchor: &dyn Fn(&FormField) -> Result<MultiField>,
    a: &FormField,
    b: &FormField,
) -> Result<FormField> {
    let ra = anchor(a)?;
    let rb = anchor(b)?;
    let pairing = b.contract(&ra)?;
    Ok(b.lie_derivative(&ra)?.sub(&a.lie_derivative(&rb)?).sub(&pairing.d()))
}

/// `(1,1)`-tensor as a matrix of polynomials: `N ∂_j = Σ_i N[i][j] ∂_i`.
pub type TensorMatrix = Vec<Vec<Poly>>;

fn check_square(chart: &Chart, n: &TensorMatrix) -> Result<()> {
    let d = chart.dim();
    if n.len() != d || n.iter().any(|r| r.len() != d) {
        return Err(Error::Shape(format!("expected a {d}×{d} matrix")));
    }
    if n.iter().flatten().any(|p| p.chart() != chart) {
        return Err(Error::ChartMismatch);
    }
    Ok(())
}

fn apply_tensor(n: &TensorMatrix, x: &MultiField) -> Result<MultiField> {
    let xs = x.as_vec()?;
    let chart = x.chart();
    let comps = (0..xs.len())
        .map(|i| xs.iter().enumerate().fold(Poly::zero(chart), |s, (j, xj)| &s + &(&n[i][j] * xj)))
        .collect();
    Ok(MultiField::from_vec(chart, comps))
}

fn apply_dual(n: &TensorMatrix, a: &FormField) -> Result<FormField> {
    let xs = a.as_vec()?;
    let chart = a.chart();
    let comps = (0..xs.len())
        .map(|j| xs.iter().enumerate().fold(Poly::zero(chart), |s, (i, ai)| &s + &(ai * &n[i][j])))
        .collect();
    Ok(FormField::from_vec(chart, comps))
}

/// Constructions of complex bivectors from real data.
#[derive(Clone, Debug)]
pub enum Construction {
    /// `σ` viewed as complex.
    Complexify(MultiField),
    /// `iσ`.
    Twist(MultiField),
    /// `σ + iσ`.
    Diagonal(MultiField),
    /// `π̄`.
    Conjugate(ComplexBivector),
    /// `μπ₁ + iλπ₂`.
    TwoParam { re: MultiField, im: MultiField, mu: GaussScalar, lambda: GaussScalar },
    /// `σ + iσ_N` with `σ_N♯ = N∘σ♯`.
    Nijenhuis { sigma: MultiField, n: TensorMatrix },
}

fn real_bivector(s: &MultiField) -> Result<()> {
    if s.degree() != 2 {
        return Err(Error::Shape(format!("expected a bivector, found degree {}", s.degree())));
    }
    if !s.is_real() {
        return Err(Error::Shape("expected a real bivector".into()));
    }
    Ok(())
}

pub fn construct(c: Construction) -> Result<ComplexBivector> {
    let i = GaussScalar::i();
    match c {
        Construction::Complexify(s) => {
            real_bivector(&s)?;
            ComplexBivector::new(s)
        }
        Construction::Twist(s) => {
            real_bivector(&s)?;
            ComplexBivector::new(s.scale(&i))
        }
        Construction::Diagonal(s) => {
            real_bivector(&s)?;
            ComplexBivector::new(s.add(&s.scale(&i)))
        }
        Construction::Conjugate(p) => Ok(p.conj()),
        Construction::TwoParam { re, im, mu, lambda } => {
            real_bivector(&re)?;
            real_bivector(&im)?;
            if re.chart() != im.chart() {
                return Err(Error::ChartMismatch);
            }
            ComplexBivector::new(re.scale(&mu).add(&im.scale(&(&lambda * &i))))
        }
        Construction::Nijenhuis { sigma, n } => {
            real_bivector(&sigma)?;
            check_square(sigma.chart(), &n)?;
            let sn = nijenhuis_bivector(&sigma, &n)?;
            ComplexBivector::new(sigma.add(&sn.scale(&i)))
        }
    }
}

/// The bivector `σ_N` with `σ_N(dx_i, dx_j) = Σ_k σ^{ik} N_jk`.
fn nijenhuis_bivector(sigma: &MultiField, n: &TensorMatrix) -> Result<MultiField> {
    let chart = sigma.chart();
    let d = chart.dim();
    let entry = |i: usize, j: usize| {
        (0..d).fold(Poly::zero(chart), |s, k| &s + &(&sigma.coeff_signed(&[i, k]) * &n[j][k]))
    };
    let mut comps = Vec::new();
    for i in 0..d {
        if !entry(i, i).is_zero() {
            return Err(Error::Shape("N∘σ♯ is not skew-symmetric".into()));
        }
        for j in i + 1..d {
            let (a, b) = (entry(i, j), entry(j, i));
            if !(&a + &b).is_zero() {
                return Err(Error::Shape("N∘σ♯ is not skew-symmetric".into()));
            }
            comps.push((vec![i, j], a));
        }
    }
    MultiField::from_comps(chart, 2, comps)
}

/// Residuals of the two Poisson–Nijenhuis compatibility conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisResiduals {
    /// `(σ♯∘N* − N∘σ♯)`, column `k` being the value on `dx_k`.
    pub compatibility: Vec<Vec<Poly>>,
    /// For each pair `a < b` of coordinate one-forms, in lexicographic order,
    /// `[α,β]_{σ_N} − [N*α,β]_σ − [α,N*β]_σ + N*[α,β]_σ`.
    pub brackets: Vec<FormField>,
}

impl NijenhuisResiduals {
    pub fn all_zero(&self) -> bool {
        self.compatibility.iter().flatten().all(Poly::is_zero) && self.brackets.iter().all(FormField::is_zero)
    }
}

pub fn nijenhuis_residuals(sigma: &MultiField, n: &TensorMatrix) -> Result<NijenhuisResiduals> {
    if sigma.degree() != 2 {
        return Err(Error::Shape("expected a bivector".into()));
    }
    let chart = sigma.chart();
    check_square(chart, n)?;
    let d = chart.dim();
    let sharp = |a: &FormField| sigma.interior(a);
    let sharp_n = |a: &FormField| apply_tensor(n, &sigma.interior(a)?);
    let mut columns = Vec::new();
    for k in 0..d {
        let dk = FormField::coordinate(chart, k);
        let lhs = sharp(&apply_dual(n, &dk)?)?;
        let rhs = sharp_n(&dk)?;
        columns.push(lhs.sub(&rhs).as_vec()?);
    }
    let compatibility = (0..d).map(|i| (0..d).map(|k| columns[k][i].clone()).collect()).collect();
    let mut brackets = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let (fa, fb) = (FormField::coordinate(chart, a), FormField::coordinate(chart, b));
            let lhs = anchored_bracket(&sharp_n, &fa, &fb)?;
            let t1 = anchored_bracket(&sharp, &apply_dual(n, &fa)?, &fb)?;
            let t2 = anchored_bracket(&sharp, &fa, &apply_dual(n, &fb)?)?;
            let t3 = apply_dual(n, &anchored_bracket(&sharp, &fa, &fb)?)?;
            brackets.push(lhs.sub(&t1).sub(&t2).add(&t3));
        }
    }
    Ok(NijenhuisResiduals { compatibility, brackets })
}

/// Complex Poisson structure on `(x, y, z)` with brackets `{x,y} = 1 + ia`,
/// `{x,z} = ib` and `{y,z} = y + i(−ay + (1+a²)/b · z)`; needs `b ≠ 0`.
pub fn xyz_family(a: &Rational, b: &Rational) -> Result<ComplexBivector> {
    use num_traits::{One, Zero};
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let chart = Chart::new(["x", "y", "z"])?;
    let c = |r: &Rational| GaussScalar::real(r.clone());
    let i = GaussScalar::i();
    let y = Poly::coordinate(&chart, 1);
    let z = Poly::coordinate(&chart, 2);
    let one = Rational::one();
    let k = (&one + a * a) / b;
    let xy = Poly::constant(&chart, &GaussScalar::one() + &(&c(a) * &i));
    let xz = Poly::constant(&chart, &c(b) * &i);
    let yz = &y + &(&y.scale(&-&c(a)) + &z.scale(&c(&k))).scale(&i);
    ComplexBivector::new(MultiField::from_comps(&chart, 2, [(vec![0, 1], xy), (vec![0, 2], xz), (vec![1, 2], yz)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn family() -> ComplexBivector {
        xyz_family(&rat(0, 1), &rat(1, 1)).unwrap()
    }

    fn p(c: &Chart, s: &str) -> Poly {
        parse_poly(s, c).unwrap()
    }

    #[test]
    fn family_brackets() {
        let pi = family();
        let c = pi.chart().clone();
        assert_eq!(pi.bracket(&p(&c, "x"), &p(&c, "y")).unwrap(), p(&c, "1"));
        assert_eq!(pi.bracket(&p(&c, "x"), &p(&c, "z")).unwrap(), p(&c, "i"));
        assert_eq!(pi.bracket(&p(&c, "y"), &p(&c, "z")).unwrap(), p(&c, "y + i*z"));
        let f = p(&c, "x*y + i*z^2");
        assert!(pi.bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn family_is_poisson() {
        for (a, b) in [(0, 1), (1, 2), (3, 5)] {
            let pi = xyz_family(&rat(a, 1), &rat(b, 1)).unwrap();
            assert!(pi.is_poisson());
            let (c1, c2) = pi.pair_conditions();
            assert!(c1.is_zero() && c2.is_zero());
            assert!(pi.jacobi_pde_residuals().iter().all(|r| r.value.is_zero()));
        }
    }

    #[test]
    fn bi_hamiltonian_example_is_poisson() {
        let c = Chart::numbered("x", 3).unwrap();
        let pi = ComplexBivector::parse(&c, &[(1, 2, "x3"), (2, 3, "i*x1")]).unwrap();
        assert!(pi.is_poisson());
        let (re, im) = pi.body().decompose();
        assert_eq!(re, ComplexBivector::parse(&c, &[(1, 2, "x3")]).unwrap().body().clone());
        assert_eq!(im, ComplexBivector::parse(&c, &[(2, 3, "x1")]).unwrap().body().clone());
    }

    #[test]
    fn hamiltonian_examples() {
        let c = Chart::new(["q", "p"]).unwrap();
        let pi = ComplexBivector::parse(&c, &[(1, 2, "1")]).unwrap();
        assert_eq!(pi.hamiltonian(&p(&c, "p")).unwrap(), MultiField::coordinate(&c, 0));
        assert!(pi.hamiltonian(&p(&c, "3 + i")).unwrap().is_zero());
        let fam = family();
        let c3 = fam.chart().clone();
        let x = fam.hamiltonian(&p(&c3, "x")).unwrap();
        assert_eq!(x, MultiField::from_vec(&c3, vec![p(&c3, "0"), p(&c3, "-1"), p(&c3, "-i")]));
        let f = p(&c3, "y*z + x^2");
        assert_eq!(x.apply(&f).unwrap(), fam.bracket(&f, &p(&c3, "x")).unwrap());
    }

    #[test]
    fn casimir_examples() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let pi = ComplexBivector::parse(&c, &[(1, 2, "1")]).unwrap();
        assert!(pi.casimir_residual(&p(&c, "5")).unwrap().is_zero());
        assert!(pi.casimir_residual(&p(&c, "z")).unwrap().is_zero());
        assert!(!pi.casimir_residual(&p(&c, "x")).unwrap().is_zero());
    }

    #[test]
    fn cotangent_bracket_of_differentials() {
        let pi = family();
        let c = pi.chart().clone();
        let dx = FormField::coordinate(&c, 0);
        let dy = FormField::coordinate(&c, 1);
        assert!(pi.cotangent_bracket(&dx, &dy).unwrap().is_zero());
        let (f, g) = (p(&c, "x*y"), p(&c, "z^2 + i*y"));
        let lhs = pi.cotangent_bracket(&complex_differential(&f), &complex_differential(&g)).unwrap();
        assert_eq!(lhs, complex_differential(&pi.bracket(&f, &g).unwrap()));
    }

    #[test]
    fn cotangent_bracket_anchor_identity() {
        let c = Chart::new(["x", "y"]).unwrap();
        let pi = ComplexBivector::parse(&c, &[(1, 2, "x")]).unwrap();
        let (dx, dy) = (FormField::coordinate(&c, 0), FormField::coordinate(&c, 1));
        let br = pi.cotangent_bracket(&dx, &dy).unwrap();
        assert_eq!(br, dx);
        let lhs = pi.sharp(&br).unwrap();
        let rhs = pi.sharp(&dx).unwrap().lie_bracket(&pi.sharp(&dy).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constructions() {
        let c = Chart::new(["q", "p"]).unwrap();
        let s = ComplexBivector::parse(&c, &[(1, 2, "1")]).unwrap().body().clone();
        let id: TensorMatrix = (0..2).map(|i| (0..2).map(|j| Poly::constant(&c, ((i == j) as i64).into())).collect()).collect();
        let pn = construct(Construction::Nijenhuis { sigma: s.clone(), n: id.clone() }).unwrap();
        assert_eq!(pn, construct(Construction::Diagonal(s.clone())).unwrap());
        assert!(pn.is_poisson());
        assert!(nijenhuis_residuals(&s, &id).unwrap().all_zero());
        let two = GaussScalar::int(2);
        let scaled: TensorMatrix = id.iter().map(|r| r.iter().map(|x| x.scale(&two)).collect()).collect();
        assert!(nijenhuis_residuals(&s, &scaled).unwrap().all_zero());
        assert!(construct(Construction::Conjugate(family())).unwrap().is_poisson());
        assert!(construct(Construction::Twist(s.scale(&GaussScalar::i()))).is_err());
    }

    #[test]
    fn non_compatible_recursion_operator() {
        let c = Chart::new(["q", "p"]).unwrap();
        let s = ComplexBivector::parse(&c, &[(1, 2, "1")]).unwrap().body().clone();
        let k = |v: i64| Poly::constant(&c, v.into());
        let n = vec![vec![k(1), k(0)], vec![k(0), k(2)]];
        let r = nijenhuis_residuals(&s, &n).unwrap();
        // σ♯N*dq = 1·σ♯dq = ∂p, Nσ♯dq = 2∂p; σ♯N*dp = −2∂q, Nσ♯dp = −∂q.
        assert_eq!(r.compatibility, vec![vec![k(0), k(-1)], vec![k(-1), k(0)]]);
        assert!(r.brackets.iter().all(FormField::is_zero));
        assert!(construct(Construction::Nijenhuis { sigma: s, n }).is_err());
    }
}
