//! Pointwise calculus of lagrangian subspaces of `ℂⁿ ⊕ (ℂⁿ)*`.
//!
//! Vectors have `2n` slots, tangent first. The pairing is the ℂ-bilinear
//! `⟨X+ξ, Y+η⟩ = ½(η(X) + ξ(Y))`. All subspaces are kept in reduced echelon
//! form, so equality of subspaces is equality of values.

use num_traits::{One, Zero};

use crate::arith::{GaussScalar, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, is_skew, mat_vec, nullspace, transpose, Matrix, Subspace};

pub type SubspaceReal = Subspace<Rational>;
pub type SubspaceComplex = Subspace<GaussScalar>;

/// An isotropic subspace of `ℂⁿ ⊕ (ℂⁿ)*`; lagrangian when its dimension is `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lagrangian {
    n: usize,
    space: SubspaceComplex,
}

pub fn to_complex(v: &[Rational]) -> Vec<GaussScalar> {
    v.iter().map(|x| GaussScalar::real(x.clone())).collect()
}

pub fn matrix_to_complex(m: &Matrix<Rational>) -> Matrix<GaussScalar> {
    m.iter().map(|r| to_complex(r)).collect()
}

/// `⟨X+ξ, Y+η⟩ = ½(η(X) + ξ(Y))`.
pub fn pairing(a: &[GaussScalar], b: &[GaussScalar]) -> GaussScalar {
    let n = a.len() / 2;
    let s = linalg::dot(&a[..n], &b[n..]) + linalg::dot(&a[n..], &b[..n]);
    s * GaussScalar::from_ratios((1, 2), (0, 1))
}

/// The real pairing on `ℝⁿ ⊕ (ℝⁿ)*`.
pub fn pairing_real(a: &[Rational], b: &[Rational]) -> Rational {
    let n = a.len() / 2;
    (linalg::dot(&a[..n], &b[n..]) + linalg::dot(&a[n..], &b[..n])) / Rational::from_integer(2.into())
}

impl Lagrangian {
    /// Span of `gens`, which must be lagrangian.
    pub fn from_generators(n: usize, gens: Matrix<GaussScalar>) -> Result<Self> {
        let l = Self::isotropic(n, gens)?;
        if !l.is_lagrangian() {
            return Err(Error::NotLagrangian(format!("dimension {} instead of {n}", l.dim())));
        }
        Ok(l)
    }

    /// Span of `gens`, which must be isotropic; any dimension up to `n`.
    pub fn isotropic(n: usize, gens: Matrix<GaussScalar>) -> Result<Self> {
        let space = Subspace::from_generators(2 * n, gens)?;
        let b = space.basis();
        for (k, u) in b.iter().enumerate() {
            for v in &b[k..] {
                if !pairing(u, v).is_zero() {
                    return Err(Error::NotLagrangian("generators are not isotropic".into()));
                }
            }
        }
        Ok(Lagrangian { n, space })
    }

    pub fn complexify(real: &SubspaceReal) -> Result<Self> {
        if real.ambient() % 2 == 1 {
            return Err(Error::Dimension("odd ambient dimension".into()));
        }
        Self::isotropic(real.ambient() / 2, real.basis().iter().map(|v| to_complex(v)).collect())
    }

    /// `T_ℂ`: all tangent vectors.
    pub fn tangent(n: usize) -> Self {
        let gens = (0..n).map(|k| unit(2 * n, k)).collect();
        Self::from_generators(n, gens).expect("tangent space is lagrangian")
    }

    /// `T*_ℂ`: all covectors.
    pub fn cotangent(n: usize) -> Self {
        let gens = (0..n).map(|k| unit(2 * n, n + k)).collect();
        Self::from_generators(n, gens).expect("cotangent space is lagrangian")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_lagrangian(&self) -> bool {
        self.dim() == self.n
    }

    pub fn basis(&self) -> &Matrix<GaussScalar> {
        self.space.basis()
    }

    pub fn space(&self) -> &SubspaceComplex {
        &self.space
    }

    pub fn contains(&self, v: &[GaussScalar]) -> bool {
        self.space.contains(v)
    }

    /// Whether every basis vector is real.
    pub fn is_real(&self) -> bool {
        self.basis().iter().flatten().all(GaussScalar::is_real)
    }

    /// `pr_T L`.
    pub fn range(&self) -> SubspaceComplex {
        let gens = self.basis().iter().map(|v| v[..self.n].to_vec()).collect();
        Subspace::from_generators(self.n, gens).expect("dimension")
    }

    /// `L ∩ T_ℂ`, as a subspace of `ℂⁿ`.
    pub fn kernel(&self) -> SubspaceComplex {
        let n = self.n;
        let t = Subspace::from_generators(2 * n, (0..n).map(|k| unit(2 * n, k)).collect()).expect("dim");
        let gens = self.space.intersect(&t).basis().iter().map(|v| v[..n].to_vec()).collect();
        Subspace::from_generators(n, gens).expect("dimension")
    }

    /// `L ∩ T*_ℂ`, as a subspace of `(ℂⁿ)*`.
    pub fn cokernel(&self) -> SubspaceComplex {
        let n = self.n;
        let t = Subspace::from_generators(2 * n, (0..n).map(|k| unit(2 * n, n + k)).collect()).expect("dim");
        let gens = self.space.intersect(&t).basis().iter().map(|v| v[n..].to_vec()).collect();
        Subspace::from_generators(n, gens).expect("dimension")
    }

    /// The bivector whose graph is `L`, when `L ∩ T_ℂ = 0`.
    pub fn as_bivector(&self) -> Option<Matrix<GaussScalar>> {
        if !self.is_lagrangian() || self.kernel().dim() > 0 {
            return None;
        }
        // Rows P_k solve X = P_k with covector e_k in L.
        let n = self.n;
        let rows: Option<Matrix<GaussScalar>> = (0..n)
            .map(|k| {
                let target = unit(n, k);
                let cov = transpose(&self.basis().iter().map(|v| v[n..].to_vec()).collect(), n);
                let c = linalg::solve(&cov, &target, self.dim())?;
                let b = transpose(self.basis(), 2 * n);
                let v = mat_vec(&b, &c);
                Some(v[..n].to_vec())
            })
            .collect();
        rows
    }

    /// The two-form whose graph is `L`, when `L ∩ T*_ℂ = 0`.
    pub fn as_twoform(&self) -> Option<Matrix<GaussScalar>> {
        if !self.is_lagrangian() || self.cokernel().dim() > 0 {
            return None;
        }
        let n = self.n;
        let tan = transpose(&self.basis().iter().map(|v| v[..n].to_vec()).collect(), n);
        let b = transpose(self.basis(), 2 * n);
        (0..n)
            .map(|k| {
                let c = linalg::solve(&tan, &unit(n, k), self.dim())?;
                Some(mat_vec(&b, &c)[n..].to_vec())
            })
            .collect()
    }
}

fn unit<F: linalg::Field>(len: usize, k: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[k] = F::one();
    v
}

fn check_square(m: &Matrix<GaussScalar>, n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("expected a {n}×{n} matrix")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Bivector,
    TwoForm,
}

/// `{π♯ξ + ξ}` for a coefficient matrix `P_ij = π(e_i, e_j)`.
pub fn graph_bivector(p: &Matrix<GaussScalar>) -> Result<Lagrangian> {
    graph(p, GraphKind::Bivector)
}

/// `{X + ι_Xω}` for `W_ij = ω(e_i, e_j)`.
pub fn graph_twoform(w: &Matrix<GaussScalar>) -> Result<Lagrangian> {
    graph(w, GraphKind::TwoForm)
}

pub fn graph(datum: &Matrix<GaussScalar>, kind: GraphKind) -> Result<Lagrangian> {
    let n = datum.len();
    check_square(datum, n)?;
    if !is_skew(datum) {
        return Err(Error::NotSkew);
    }
    let gens = (0..n)
        .map(|k| {
            let mut v = vec![GaussScalar::zero(); 2 * n];
            let (own, other) = match kind {
                GraphKind::Bivector => (n, 0),
                GraphKind::TwoForm => (0, n),
            };
            v[own + k] = GaussScalar::one();
            for j in 0..n {
                v[other + j] = datum[k][j].clone();
            }
            v
        })
        .collect();
    Lagrangian::from_generators(n, gens)
}

/// `L(E, ε) = {X + ξ : X ∈ E, ξ|_E = ι_Xε}` with `ε` given by any skew
/// extension `W` to the whole space.
pub fn from_distribution(e: &SubspaceComplex, w: &Matrix<GaussScalar>) -> Result<Lagrangian> {
    let n = e.ambient();
    check_square(w, n)?;
    if !is_skew(w) {
        return Err(Error::NotSkew);
    }
    let mut gens: Matrix<GaussScalar> = e
        .basis()
        .iter()
        .map(|x| {
            let mut v = x.clone();
            v.extend(mat_vec(&transpose(w, n), x));
            v
        })
        .collect();
    for a in e.annihilator().basis() {
        let mut v = vec![GaussScalar::zero(); n];
        v.extend(a.iter().cloned());
        gens.push(v);
    }
    Lagrangian::from_generators(n, gens)
}

/// Real version of [`from_distribution`].
pub fn from_distribution_real(e: &SubspaceReal, w: &Matrix<Rational>) -> Result<SubspaceReal> {
    let ec = Subspace::from_generators(e.ambient(), e.basis().iter().map(|v| to_complex(v)).collect())?;
    let l = from_distribution(&ec, &matrix_to_complex(w))?;
    Ok(real_slice(&l))
}

/// `ε_L` on `E = pr_T L`: the basis of `E` and `ε(X_a, X_b) = ξ_a(X_b)` where
/// `X_a + ξ_a ∈ L`.
pub fn dirac_form(l: &Lagrangian) -> (SubspaceComplex, Matrix<GaussScalar>) {
    let n = l.n;
    let e = l.range();
    let tan = transpose(&l.basis().iter().map(|v| v[..n].to_vec()).collect(), n);
    let full = transpose(l.basis(), 2 * n);
    let covs: Vec<Vec<GaussScalar>> = e
        .basis()
        .iter()
        .map(|x| {
            let c = linalg::solve(&tan, x, l.dim()).expect("x lies in the range");
            mat_vec(&full, &c)[n..].to_vec()
        })
        .collect();
    let m = covs.iter().map(|xi| e.basis().iter().map(|y| linalg::dot(xi, y)).collect()).collect();
    (e, m)
}

/// Elements of `L` as `Σ (s_k + i t_k) b_k`, realified: the real and imaginary
/// parts as linear maps of `(s, t) ∈ ℝ^{2d}`, one row per slot.
fn realify(basis: &Matrix<GaussScalar>, width: usize) -> (Matrix<Rational>, Matrix<Rational>) {
    let d = basis.len();
    let mut re = linalg::zeros(width, 2 * d);
    let mut im = linalg::zeros(width, 2 * d);
    for (k, b) in basis.iter().enumerate() {
        for (j, x) in b.iter().enumerate() {
            re[j][k] = x.re().clone();
            re[j][d + k] = -x.im().clone();
            im[j][k] = x.im().clone();
            im[j][d + k] = x.re().clone();
        }
    }
    (re, im)
}

/// `{out(v) : v ∈ span, constraint(v) = 0}` for real-linear maps of the
/// realified parameters.
fn real_elimination(constraint: &Matrix<Rational>, out: &Matrix<Rational>, params: usize) -> SubspaceReal {
    let ker = nullspace(constraint, params);
    let gens = ker.iter().map(|v| mat_vec(out, v)).collect();
    Subspace::from_generators(out.len(), gens).expect("dimension")
}

/// `L ∩ ℝ^{2n}`.
pub fn real_slice(l: &Lagrangian) -> SubspaceReal {
    let (re, im) = realify(l.basis(), 2 * l.n);
    real_elimination(&im, &re, 2 * l.dim())
}

/// `E ∩ ℝᵐ` for a complex subspace.
pub fn real_part_of(e: &SubspaceComplex) -> SubspaceReal {
    let (re, im) = realify(e.basis(), e.ambient());
    real_elimination(&im, &re, 2 * e.dim())
}

/// Real span of the real and imaginary parts of a complex subspace.
pub fn real_projection(e: &SubspaceComplex) -> SubspaceReal {
    let mut gens = Vec::new();
    for v in e.basis() {
        gens.push(v.iter().map(|x| x.re().clone()).collect());
        gens.push(v.iter().map(|x| x.im().clone()).collect());
    }
    Subspace::from_generators(e.ambient(), gens).expect("dimension")
}

fn stack(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    a.iter().chain(b).cloned().collect()
}

/// `{X + ξ : ∃η real, X + η + iξ ∈ L}` with `X, ξ` real.
pub fn hat(l: &Lagrangian) -> SubspaceReal {
    let n = l.n;
    let (re, im) = realify(l.basis(), 2 * n);
    let out = stack(&re[..n].to_vec(), &im[n..].to_vec());
    real_elimination(&im[..n].to_vec(), &out, 2 * l.dim())
}

/// `{X + ξ : ∃η real, X + ξ + iη ∈ L}` with `X, ξ` real.
pub fn check(l: &Lagrangian) -> SubspaceReal {
    let n = l.n;
    let (re, im) = realify(l.basis(), 2 * n);
    real_elimination(&im[..n].to_vec(), &re, 2 * l.dim())
}

/// `check(L) ⋆_ℂ hat(L)`.
pub fn tilde(l: &Lagrangian) -> Result<Lagrangian> {
    complex_tangent_sum(&check(l), &hat(l))
}

/// Solutions of `Σ a_k u_k = Σ b_k v_k` on the selected slots, returned as the
/// combined vectors `f(Σ a_k u_k, Σ b_k v_k)`.
fn fibered(
    l1: &Lagrangian,
    l2: &Lagrangian,
    matched: std::ops::Range<usize>,
    combine: impl Fn(&[GaussScalar], &[GaussScalar]) -> Vec<GaussScalar>,
) -> Result<Lagrangian> {
    if l1.n != l2.n {
        return Err(Error::Dimension(format!("half-dimensions {} and {}", l1.n, l2.n)));
    }
    let n = l1.n;
    let (d1, d2) = (l1.dim(), l2.dim());
    let eqs: Matrix<GaussScalar> = matched
        .map(|j| {
            let mut row: Vec<GaussScalar> = l1.basis().iter().map(|u| u[j].clone()).collect();
            row.extend(l2.basis().iter().map(|v| -v[j].clone()));
            row
        })
        .collect();
    let b1 = transpose(l1.basis(), 2 * n);
    let b2 = transpose(l2.basis(), 2 * n);
    let gens = nullspace(&eqs, d1 + d2)
        .iter()
        .map(|c| combine(&mat_vec(&b1, &c[..d1]), &mat_vec(&b2, &c[d1..])))
        .collect();
    Lagrangian::isotropic(n, gens)
}

/// `L₁ ⋆ L₂ = {X + η₁ + η₂ : X + η₁ ∈ L₁, X + η₂ ∈ L₂}`.
pub fn tangent_product(l1: &Lagrangian, l2: &Lagrangian) -> Result<Lagrangian> {
    let n = l1.n;
    fibered(l1, l2, 0..n, |u, v| {
        let mut w = u[..n].to_vec();
        w.extend(u[n..].iter().zip(&v[n..]).map(|(a, b)| a + b));
        w
    })
}

/// `L₁ ⊛ L₂ = {X₁ + X₂ + ξ : X₁ + ξ ∈ L₁, X₂ + ξ ∈ L₂}`.
pub fn cotangent_product(l1: &Lagrangian, l2: &Lagrangian) -> Result<Lagrangian> {
    let n = l1.n;
    fibered(l1, l2, n..2 * n, |u, v| {
        let mut w: Vec<GaussScalar> = u[..n].iter().zip(&v[..n]).map(|(a, b)| a + b).collect();
        w.extend(u[n..].iter().cloned());
        w
    })
}

/// `L₁ ⋆_ℂ L₂ = (L₁)_ℂ ⋆ i·(L₂)_ℂ` for real lagrangians.
pub fn complex_tangent_sum(l1: &SubspaceReal, l2: &SubspaceReal) -> Result<Lagrangian> {
    tangent_product(&Lagrangian::complexify(l1)?, &scalar_dot(&GaussScalar::i(), &Lagrangian::complexify(l2)?))
}

/// `L₁ ⊛_ℂ L₂ = (L₁)_ℂ ⊛ i∙(L₂)_ℂ` for real lagrangians.
pub fn complex_cotangent_sum(l1: &SubspaceReal, l2: &SubspaceReal) -> Result<Lagrangian> {
    cotangent_product(&Lagrangian::complexify(l1)?, &scalar_bullet(&GaussScalar::i(), &Lagrangian::complexify(l2)?))
}

fn map_basis(l: &Lagrangian, f: impl Fn(&[GaussScalar]) -> Vec<GaussScalar>) -> Lagrangian {
    let gens = l.basis().iter().map(|v| f(v)).collect();
    Lagrangian::isotropic(l.n, gens).expect("transforms preserve isotropy")
}

/// `z·L = {X + zξ}`.
pub fn scalar_dot(z: &GaussScalar, l: &Lagrangian) -> Lagrangian {
    let n = l.n;
    map_basis(l, |v| v[..n].iter().cloned().chain(v[n..].iter().map(|x| x * z)).collect())
}

/// `z∙L = {zX + ξ}`.
pub fn scalar_bullet(z: &GaussScalar, l: &Lagrangian) -> Lagrangian {
    let n = l.n;
    map_basis(l, |v| v[..n].iter().map(|x| x * z).chain(v[n..].iter().cloned()).collect())
}

pub fn conjugate(l: &Lagrangian) -> Lagrangian {
    map_basis(l, |v| v.iter().map(GaussScalar::conj).collect())
}

/// `e^B L = {X + ξ + ι_X B}`.
pub fn b_field(b: &Matrix<GaussScalar>, l: &Lagrangian) -> Result<Lagrangian> {
    let n = l.n;
    check_square(b, n)?;
    if !is_skew(b) {
        return Err(Error::NotSkew);
    }
    let bt = transpose(b, n);
    Ok(map_basis(l, |v| {
        let shift = mat_vec(&bt, &v[..n]);
        v[..n].iter().cloned().chain(v[n..].iter().zip(shift).map(|(a, s)| a + &s)).collect()
    }))
}

/// `e^β L = {X + ι_ξβ + ξ}`.
pub fn beta(p: &Matrix<GaussScalar>, l: &Lagrangian) -> Result<Lagrangian> {
    let n = l.n;
    check_square(p, n)?;
    if !is_skew(p) {
        return Err(Error::NotSkew);
    }
    let pt = transpose(p, n);
    Ok(map_basis(l, |v| {
        let shift = mat_vec(&pt, &v[n..]);
        v[..n].iter().zip(shift).map(|(a, s)| a + &s).chain(v[n..].iter().cloned()).collect()
    }))
}

/// `((1/2)∙(L ⊛ L̄)) ∩ 𝕋`.
pub fn check_cot(l: &Lagrangian) -> Result<SubspaceReal> {
    let half = GaussScalar::from_ratios((1, 2), (0, 1));
    Ok(real_slice(&scalar_bullet(&half, &cotangent_product(l, &conjugate(l))?)))
}

/// `((1/2i)∙(L ⊛ (−1)∙L̄)) ∩ 𝕋`.
pub fn hat_cot(l: &Lagrangian) -> Result<SubspaceReal> {
    let inv_2i = GaussScalar::from_ratios((0, 1), (-1, 2));
    let minus = scalar_bullet(&GaussScalar::int(-1), &conjugate(l));
    Ok(real_slice(&scalar_bullet(&inv_2i, &cotangent_product(l, &minus)?)))
}

/// `check_cot(L) ⊛_ℂ hat_cot(L)`.
pub fn tilde_cot(l: &Lagrangian) -> Result<Lagrangian> {
    complex_cotangent_sum(&check_cot(l)?, &hat_cot(l)?)
}

/// Dimensions attached to a lagrangian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Indices {
    /// `dim (L ∩ ℝ^{2n})`.
    pub real_index: usize,
    /// `dim E`, `E = pr_T L`.
    pub dim_range: usize,
    /// `dim Δ`, `Δ = E ∩ ℝⁿ`.
    pub dim_delta: usize,
    /// `dim D`, `D` the real span of `Re E` and `Im E`.
    pub dim_d: usize,
    /// `dim (L ∩ T_ℂ)`.
    pub kernel_dim: usize,
}

pub fn indices(l: &Lagrangian) -> Indices {
    let e = l.range();
    Indices {
        real_index: real_slice(l).dim(),
        dim_range: e.dim(),
        dim_delta: real_part_of(&e).dim(),
        dim_d: real_projection(&e).dim(),
        kernel_dim: l.kernel().dim(),
    }
}

/// `K = L ∩ 𝕋`, its orthogonal `K^⊥ ⊂ 𝕋`, and the two projection identities
/// `pr_T K^⊥ = D` and `pr_T K = ker ε_{hat L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KReport {
    pub k: SubspaceReal,
    pub k_perp: SubspaceReal,
    pub perp_projects_to_d: bool,
    pub k_projects_to_kernel: bool,
}

pub fn k_and_perp(l: &Lagrangian) -> KReport {
    let n = l.n;
    let k = real_slice(l);
    // ⟨v, w⟩ = 0 for all w ∈ K: rows are the pairing functionals of K.
    let eqs: Matrix<Rational> = k.basis().iter().map(|w| w[n..].iter().chain(&w[..n]).cloned().collect()).collect();
    let k_perp = Subspace::from_generators(2 * n, nullspace(&eqs, 2 * n)).expect("dimension");
    let pr = |s: &SubspaceReal| {
        Subspace::from_generators(n, s.basis().iter().map(|v| v[..n].to_vec()).collect()).expect("dimension")
    };
    let d = real_projection(&l.range());
    let h = hat(l);
    let hat_kernel = {
        let t = Subspace::from_generators(2 * n, (0..n).map(|j| unit(2 * n, j)).collect()).expect("dim");
        pr(&h.intersect(&t))
    };
    KReport { perp_projects_to_d: pr(&k_perp) == d, k_projects_to_kernel: pr(&k) == hat_kernel, k, k_perp }
}

/// `{X + A*ξ : AX + ξ ∈ L}` for `A: ℂᵐ → ℂⁿ` given as an `n × m` matrix and
/// `L ⊂ ℂⁿ ⊕ (ℂⁿ)*`.
pub fn backward(a: &Matrix<GaussScalar>, l: &Lagrangian) -> Result<Lagrangian> {
    backward_from(a, a.first().map_or(0, Vec::len), l)
}

/// [`backward`] for a map out of `ℂᵐ`, which also covers maps with no rows.
pub fn backward_from(a: &Matrix<GaussScalar>, m: usize, l: &Lagrangian) -> Result<Lagrangian> {
    let n = l.n;
    if a.len() != n {
        return Err(Error::Dimension(format!("map has {} rows, lagrangian lives over dimension {n}", a.len())));
    }
    if a.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let d = l.dim();
    let bt = transpose(l.basis(), 2 * n);
    // Unknowns (X, c): AX − B_T c = 0.
    let eqs: Matrix<GaussScalar> =
        (0..n).map(|j| a[j].iter().cloned().chain(bt[j].iter().map(|x| -x.clone())).collect()).collect();
    let at = transpose(a, m);
    let gens = nullspace(&eqs, m + d)
        .iter()
        .map(|v| {
            let xi = mat_vec(&bt[n..].to_vec(), &v[m..]);
            v[..m].iter().cloned().chain(mat_vec(&at, &xi)).collect()
        })
        .collect();
    Lagrangian::isotropic(m, gens)
}

/// `{AX + ξ : X + A*ξ ∈ L}` for `A: ℂᵐ → ℂⁿ` given as an `n × m` matrix and
/// `L ⊂ ℂᵐ ⊕ (ℂᵐ)*`.
pub fn forward(a: &Matrix<GaussScalar>, l: &Lagrangian) -> Result<Lagrangian> {
    let m = l.n;
    let n = a.len();
    if a.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension(format!("map must have {m} columns")));
    }
    let d = l.dim();
    let bt = transpose(l.basis(), 2 * m);
    let at = transpose(a, m);
    // Unknowns (X, ξ, c): X − B_T c = 0 and A*ξ − B_C c = 0.
    let width = m + n + d;
    let mut eqs: Matrix<GaussScalar> = Vec::new();
    for j in 0..m {
        let mut row = vec![GaussScalar::zero(); width];
        row[j] = GaussScalar::one();
        for (k, x) in bt[j].iter().enumerate() {
            row[m + n + k] = -x.clone();
        }
        eqs.push(row);
    }
    for j in 0..m {
        let mut row = vec![GaussScalar::zero(); width];
        for (k, x) in at[j].iter().enumerate() {
            row[m + k] = x.clone();
        }
        for (k, x) in bt[m + j].iter().enumerate() {
            row[m + n + k] = -x.clone();
        }
        eqs.push(row);
    }
    let gens = nullspace(&eqs, width)
        .iter()
        .map(|v| mat_vec(a, &v[..m]).into_iter().chain(v[m..m + n].iter().cloned()).collect())
        .collect();
    Lagrangian::isotropic(n, gens)
}
