//! Pointwise invariants of a complex bivector: ranks of the distributions
//! `E = im π♯`, `Δ = E ∩ TM` and `D = pr_ℝ E`, leafwise forms, the
//! generalized complex map and sampled involutivity.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{GaussScalar, Rational};
use crate::calculus::MultiField;
use crate::dirac::{self, Lagrangian, SubspaceComplex, SubspaceReal};
use crate::error::{Error, Result};
use crate::linalg::{self, mat_add, mat_mul, mat_neg, nullspace, transpose, Matrix, Subspace};
use crate::poisson::ComplexBivector;

/// Real and imaginary coefficient matrices `(P₁, P₂)` at a point.
pub fn bivector_at(pi: &ComplexBivector, point: &[Rational]) -> (Matrix<Rational>, Matrix<Rational>) {
    let p = pi.matrix_at(point);
    let re = p.iter().map(|r| r.iter().map(|x| x.re().clone()).collect()).collect();
    let im = p.iter().map(|r| r.iter().map(|x| x.im().clone()).collect()).collect();
    (re, im)
}

/// `E = im π♯` at a point, spanned by the rows of `P`.
pub fn range_at(pi: &ComplexBivector, point: &[Rational]) -> SubspaceComplex {
    Subspace::from_generators(pi.dim(), pi.matrix_at(point)).expect("dimension")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankProfile {
    pub point: Vec<Rational>,
    pub dim_e: usize,
    pub dim_delta: usize,
    pub dim_d: usize,
    pub real_index: usize,
    pub order: usize,
    /// `dim E` equals its maximum over the sample the profile belongs to.
    pub regular_sample: bool,
    /// Additionally `dim Δ` equals its maximum over the sample.
    pub strongly_regular_sample: bool,
    /// `Δ = D` at this point.
    pub quasi_real_sample: bool,
}

fn raw_profile(pi: &ComplexBivector, point: &[Rational]) -> RankProfile {
    let e = range_at(pi, point);
    let delta = dirac::real_part_of(&e);
    let d = dirac::real_projection(&e);
    debug_assert!(delta.is_subspace_of(&d));
    let (_, p2) = bivector_at(pi, point);
    let real_index = pi.dim() - linalg::rank(&p2, pi.dim());
    RankProfile {
        point: point.to_vec(),
        dim_e: e.dim(),
        dim_delta: delta.dim(),
        dim_d: d.dim(),
        real_index,
        order: d.dim(),
        regular_sample: true,
        strongly_regular_sample: true,
        quasi_real_sample: delta.dim() == d.dim(),
    }
}

/// Rank profile at a single point; the regularity flags refer to the
/// one-point sample and are therefore set.
pub fn rank_profile(pi: &ComplexBivector, point: &[Rational]) -> RankProfile {
    raw_profile(pi, point)
}

/// Rank profiles over a sample with regularity verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSummary {
    pub profiles: Vec<RankProfile>,
    /// `dim E` is constant on the sample.
    pub consistent_with_regular: bool,
    /// `dim E` and `dim Δ` are constant on the sample.
    pub consistent_with_strongly_regular: bool,
    /// `Δ = D` at every sampled point.
    pub quasi_real_on_sample: bool,
    /// Indices of points where `dim E` or `dim Δ` is below its sample maximum.
    pub rank_drop_points: Vec<usize>,
}

pub fn rank_profiles(pi: &ComplexBivector, points: &[Vec<Rational>]) -> SampleSummary {
    let mut profiles: Vec<RankProfile> = points.par_iter().map(|p| raw_profile(pi, p)).collect();
    let max_e = profiles.iter().map(|p| p.dim_e).max().unwrap_or(0);
    let max_delta = profiles.iter().map(|p| p.dim_delta).max().unwrap_or(0);
    let mut drops = Vec::new();
    for (k, p) in profiles.iter_mut().enumerate() {
        p.regular_sample = p.dim_e == max_e;
        p.strongly_regular_sample = p.regular_sample && p.dim_delta == max_delta;
        if !p.strongly_regular_sample {
            drops.push(k);
        }
    }
    SampleSummary {
        consistent_with_regular: profiles.iter().all(|p| p.regular_sample),
        consistent_with_strongly_regular: profiles.iter().all(|p| p.strongly_regular_sample),
        quasi_real_on_sample: profiles.iter().all(|p| p.quasi_real_sample),
        rank_drop_points: drops,
        profiles,
    }
}

/// Deterministic sample of `count` rational points in `[-2, 2]^dim`, built
/// from Halton sequences in the first `dim` prime bases.
pub fn default_grid(dim: usize, count: usize) -> Vec<Vec<Rational>> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let halton = |mut k: i64, b: i64| {
        let mut f = Rational::one();
        let mut r = Rational::zero();
        while k > 0 {
            f /= Rational::from_integer(b.into());
            r += &f * Rational::from_integer((k % b).into());
            k /= b;
        }
        r
    };
    (1..=count as i64)
        .map(|k| {
            (0..dim)
                .map(|j| {
                    let b = PRIMES[j % PRIMES.len()] + 2 * (j / PRIMES.len()) as i64 * 59;
                    halton(k, b) * Rational::from_integer(4.into()) - Rational::from_integer(2.into())
                })
                .collect()
        })
        .collect()
}

/// `A_π = π⁻¹(Δ)` in realified coordinates `(ξ, η)` for `θ = ξ + iη`, and its
/// complexification `A_π + iA_π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APi {
    pub real: SubspaceReal,
    pub complexified: SubspaceComplex,
    /// The complexification equals `Ann π♯((Ann Δ)_ℂ)` computed separately.
    pub routes_agree: bool,
    /// `dim_ℝ A = dim_ℂ (A + iA) + dim_ℂ ker π♯`.
    pub dimension_identity: bool,
}

pub fn a_pi_at(pi: &ComplexBivector, point: &[Rational]) -> APi {
    let n = pi.dim();
    let (p1, p2) = bivector_at(pi, point);
    // Im π♯(ξ + iη) = P₂ᵀξ + P₁ᵀη.
    let eqs: Matrix<Rational> = (0..n).map(|j| (0..n).map(|k| p2[k][j].clone()).chain((0..n).map(|k| p1[k][j].clone())).collect()).collect();
    let real = Subspace::from_generators(2 * n, nullspace(&eqs, 2 * n)).expect("dimension");
    let complexified = Subspace::from_generators(
        n,
        real.basis()
            .iter()
            .map(|v| (0..n).map(|k| GaussScalar::new(v[k].clone(), v[n + k].clone())).collect())
            .collect(),
    )
    .expect("dimension");
    let p = pi.matrix_at(point);
    let sharp = transpose(&p, n);
    let delta = dirac::real_part_of(&range_at(pi, point));
    let delta_c: SubspaceComplex =
        Subspace::from_generators(n, delta.basis().iter().map(|v| dirac::to_complex(v)).collect()).expect("dimension");
    let image = delta_c.annihilator().image(&sharp, n);
    let routes_agree = image.annihilator() == complexified;
    let kernel = n - linalg::rank(&p, n);
    APi { dimension_identity: real.dim() == complexified.dim() + kernel, real, complexified, routes_agree }
}

/// Leafwise forms on `Δ` at a point, in the echelon basis of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresymplecticData {
    pub delta: SubspaceReal,
    pub omega_re: Matrix<Rational>,
    pub omega_im: Matrix<Rational>,
    /// The forms agree for two different choices of preimages and for both
    /// displayed expressions of each form.
    pub well_defined: bool,
}

impl PresymplecticData {
    /// `Ω = ω_re + iω_im`.
    pub fn omega(&self) -> Matrix<GaussScalar> {
        self.omega_re
            .iter()
            .zip(&self.omega_im)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| GaussScalar::new(a.clone(), b.clone())).collect())
            .collect()
    }
}

fn bilinear(m: &Matrix<Rational>, a: &[Rational], b: &[Rational]) -> Rational {
    linalg::dot(a, &linalg::mat_vec(m, b))
}

/// Preimages `θ_a = ξ_a + iη_a` with `π♯θ_a = τ_a`, eliminating in column order `cols`.
fn preimages(
    p: &Matrix<GaussScalar>,
    delta: &SubspaceReal,
    cols: &[usize],
) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let n = p.len();
    let sharp = transpose(p, n);
    delta
        .basis()
        .iter()
        .map(|tau| {
            let theta = linalg::solve_in_order(&sharp, &dirac::to_complex(tau), n, cols).expect("τ lies in the range");
            (theta.iter().map(|x| x.re().clone()).collect(), theta.iter().map(|x| x.im().clone()).collect())
        })
        .collect()
}

pub fn presymplectic_at(pi: &ComplexBivector, point: &[Rational]) -> PresymplecticData {
    let n = pi.dim();
    let (p1, p2) = bivector_at(pi, point);
    let p = pi.matrix_at(point);
    let delta = dirac::real_part_of(&range_at(pi, point));
    let forward: Vec<usize> = (0..n).collect();
    let backward: Vec<usize> = (0..n).rev().collect();
    // π_k(α, β) = αᵀ P_k β.
    let forms = |th: &[(Vec<Rational>, Vec<Rational>)]| {
        let k = th.len();
        let mut re2 = linalg::zeros(k, k);
        let mut im2 = linalg::zeros(k, k);
        let mut re1 = linalg::zeros(k, k);
        let mut im1 = linalg::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                let (xi, eta) = &th[a];
                let (xi2, eta2) = &th[b];
                re2[a][b] = bilinear(&p1, xi, xi2) + bilinear(&p1, eta, eta2);
                im2[a][b] = -bilinear(&p2, xi, xi2) - bilinear(&p2, eta, eta2);
                re1[a][b] = bilinear(&p1, xi, xi2) - bilinear(&p2, eta, xi2);
                im1[a][b] = bilinear(&p1, xi, eta2) - bilinear(&p2, eta, eta2);
            }
        }
        (re2, im2, re1, im1)
    };
    let (re, im, re_alt, im_alt) = forms(&preimages(&p, &delta, &forward));
    let (re_b, im_b, _, _) = forms(&preimages(&p, &delta, &backward));
    let well_defined = re == re_b && im == im_b && re == re_alt && im == im_alt;
    PresymplecticData { delta, omega_re: re, omega_im: im, well_defined }
}

/// Sign relations between the leafwise forms and the Dirac forms of the real
/// families attached to `gr(π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafFormSigns {
    /// `ε_{check(gr π)}|_Δ = −ω_re`.
    pub check_is_minus_re: bool,
    /// `ε_{hat(gr π)}|_Δ = −ω_im`.
    pub hat_is_minus_im: bool,
    /// `ε_{hat(gr π)}|_Δ = −ω_re`.
    pub hat_is_minus_re: bool,
}

impl LeafFormSigns {
    /// The real part of the leafwise form is carried, with a minus sign, by the
    /// family whose leaves are tangent to `Δ`.
    pub fn holds(&self) -> bool {
        self.check_is_minus_re && self.hat_is_minus_im
    }
}

/// Dirac form of a real lagrangian restricted to a subspace of its range,
/// expressed in the basis of `sub`.
fn restricted_form(l: &SubspaceReal, sub: &SubspaceReal) -> Option<Matrix<Rational>> {
    let n = sub.ambient();
    let lc = Lagrangian::complexify(l).ok()?;
    let full = transpose(lc.basis(), 2 * n);
    let tan = transpose(&lc.basis().iter().map(|v| v[..n].to_vec()).collect(), n);
    let covs: Option<Vec<Vec<GaussScalar>>> = sub
        .basis()
        .iter()
        .map(|x| {
            let c = linalg::solve(&tan, &dirac::to_complex(x), lc.dim())?;
            Some(linalg::mat_vec(&full, &c)[n..].to_vec())
        })
        .collect();
    let covs = covs?;
    Some(
        covs.iter()
            .map(|xi| sub.basis().iter().map(|y| linalg::dot(xi, &dirac::to_complex(y)).re().clone()).collect())
            .collect(),
    )
}

pub fn leaf_form_signs(pi: &ComplexBivector, point: &[Rational]) -> LeafFormSigns {
    let data = presymplectic_at(pi, point);
    let l = dirac::graph_bivector(&pi.matrix_at(point)).expect("skew");
    let neg = |m: &Matrix<Rational>| mat_neg(m);
    let on_delta = |s: &SubspaceReal| restricted_form(s, &data.delta);
    let chk = on_delta(&dirac::check(&l));
    let hat = on_delta(&dirac::hat(&l));
    LeafFormSigns {
        check_is_minus_re: chk.as_ref() == Some(&neg(&data.omega_re)),
        hat_is_minus_im: hat.as_ref() == Some(&neg(&data.omega_im)),
        hat_is_minus_re: hat.as_ref() == Some(&neg(&data.omega_re)),
    }
}

/// Whether `ε_{check(gr π)}|_Δ = −ω_re` and `ε_{hat(gr π)}|_Δ = −ω_im`.
pub fn hat_sign_check(pi: &ComplexBivector, point: &[Rational]) -> bool {
    leaf_form_signs(pi, point).holds()
}

/// The lagrangian `L(Δ_ℂ, c·Ω)` built from the leafwise form, extended by
/// zero off `Δ`.
pub fn leaf_lagrangian(data: &PresymplecticData, sign: i64) -> Result<Lagrangian> {
    let n = data.delta.ambient();
    let k = data.delta.dim();
    let delta_c: SubspaceComplex =
        Subspace::from_generators(n, data.delta.basis().iter().map(|v| dirac::to_complex(v)).collect())?;
    // Extend Ω from Δ to ℂⁿ: W = Cᵀ Ω C with C the coordinates in the Δ basis
    // of a projection onto Δ along a complement.
    let pivots: Vec<usize> = data.delta.basis().iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero")).collect();
    let mut coords: Matrix<GaussScalar> = linalg::zeros(k, n);
    for (a, &p) in pivots.iter().enumerate() {
        coords[a][p] = GaussScalar::one();
    }
    let omega = linalg::mat_scale(&data.omega(), &GaussScalar::int(sign));
    let w = if k == 0 { linalg::zeros(n, n) } else { mat_mul(&mat_mul(&transpose(&coords, n), &omega), &coords) };
    dirac::from_distribution(&delta_c, &w)
}

/// Comparison of `tilde(gr π)` with the lagrangians built from the leafwise
/// form `Ω` on `Δ_ℂ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TildeLeafCheck {
    /// `tilde(gr π) = L(Δ_ℂ, Ω)`.
    pub matches_omega: bool,
    /// `tilde(gr π) = L(Δ_ℂ, −Ω)`.
    pub matches_minus_omega: bool,
}

pub fn tilde_leaf_check(pi: &ComplexBivector, point: &[Rational]) -> Result<TildeLeafCheck> {
    let data = presymplectic_at(pi, point);
    let l = dirac::graph_bivector(&pi.matrix_at(point))?;
    let t = dirac::tilde(&l)?;
    Ok(TildeLeafCheck {
        matches_omega: t == leaf_lagrangian(&data, 1)?,
        matches_minus_omega: t == leaf_lagrangian(&data, -1)?,
    })
}

/// Generalized complex map of a bivector with invertible imaginary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcs {
    /// Real `2n × 2n` matrix acting on `(X, ξ)`.
    pub j: Matrix<Rational>,
    /// `σ = P₁P₂⁻¹P₁ + P₂`.
    pub sigma: Matrix<Rational>,
}

impl Gcs {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn squares_to_minus_one(&self) -> bool {
        let m = 2 * self.n();
        mat_mul(&self.j, &self.j) == mat_neg(&linalg::identity(m))
    }

    /// `⟨Jx, Jy⟩ = ⟨x, y⟩` for the pairing `½(ξ(Y) + η(X))`.
    pub fn preserves_pairing(&self) -> bool {
        let n = self.n();
        let mut g: Matrix<Rational> = linalg::zeros(2 * n, 2 * n);
        for k in 0..n {
            g[k][n + k] = Rational::new(1.into(), 2.into());
            g[n + k][k] = Rational::new(1.into(), 2.into());
        }
        mat_mul(&mat_mul(&transpose(&self.j, 2 * n), &g), &self.j) == g
    }

    /// Kernel of `J − i`.
    pub fn plus_i_eigenspace(&self) -> SubspaceComplex {
        let m = 2 * self.n();
        let a: Matrix<GaussScalar> = self
            .j
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| {
                        let d = GaussScalar::real(x.clone());
                        if r == c { &d - &GaussScalar::i() } else { d }
                    })
                    .collect()
            })
            .collect();
        Subspace::from_generators(m, nullspace(&a, m)).expect("dimension")
    }
}

/// `J = [[P₁P₂⁻¹, P₁P₂⁻¹P₁ + P₂], [−P₂⁻¹, −P₂⁻¹P₁]]`, whose `+i`-eigenspace is
/// `gr(π)`.
pub fn gcs_matrix(pi: &ComplexBivector, point: &[Rational]) -> Result<Gcs> {
    let (p1, p2) = bivector_at(pi, point);
    gcs_from_parts(&p1, &p2)
}

pub fn gcs_from_parts(p1: &Matrix<Rational>, p2: &Matrix<Rational>) -> Result<Gcs> {
    let n = p1.len();
    let inv = linalg::inverse(p2).ok_or_else(|| Error::SingularImaginaryPart(n - linalg::rank(p2, n)))?;
    let a = mat_mul(p1, &inv);
    let sigma = mat_add(&mat_mul(&a, p1), p2);
    let c = mat_neg(&inv);
    let d = mat_neg(&mat_mul(&inv, p1));
    let mut j = linalg::zeros(2 * n, 2 * n);
    for r in 0..n {
        for s in 0..n {
            j[r][s] = a[r][s].clone();
            j[r][n + s] = sigma[r][s].clone();
            j[n + r][s] = c[r][s].clone();
            j[n + r][n + s] = d[r][s].clone();
        }
    }
    Ok(Gcs { j, sigma })
}

/// Pointwise involutivity of the span of vector fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutivityReport {
    /// `(a, b, point index)` for brackets `[X_a, X_b]` outside the span.
    pub failures: Vec<(usize, usize, usize)>,
    pub brackets: Vec<((usize, usize), MultiField)>,
}

impl InvolutivityReport {
    pub fn involutive_on_sample(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn involutivity_sample(generators: &[MultiField], points: &[Vec<Rational>]) -> Result<InvolutivityReport> {
    let mut brackets = Vec::new();
    for a in 0..generators.len() {
        for b in a + 1..generators.len() {
            brackets.push(((a, b), generators[a].lie_bracket(&generators[b])?));
        }
    }
    let eval = |x: &MultiField, pt: &[Rational]| -> Result<Vec<GaussScalar>> {
        Ok(x.as_vec()?.iter().map(|p| p.eval(pt)).collect())
    };
    let mut failures = Vec::new();
    for (k, pt) in points.iter().enumerate() {
        let gens = generators.iter().map(|g| eval(g, pt)).collect::<Result<Vec<_>>>()?;
        let n = generators.first().map_or(0, |g| g.chart().dim());
        let span: SubspaceComplex = Subspace::from_generators(n, gens)?;
        for ((a, b), br) in &brackets {
            if !span.contains(&eval(br, pt)?) {
                failures.push((*a, *b, k));
            }
        }
    }
    Ok(InvolutivityReport { failures, brackets })
}
