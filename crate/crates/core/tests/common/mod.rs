#![allow(dead_code)]

use cxpoisson::dirac::{self, Lagrangian, SubspaceComplex, SubspaceReal};
use cxpoisson::linalg::{Matrix, Subspace};
use cxpoisson::poisson::ComplexBivector;
use cxpoisson::{rat, Chart, FormField, GaussScalar, MultiField, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rational {
    let den = if r.gen_bool(0.25) { r.gen_range(2..4) } else { 1 };
    rat(r.gen_range(-3..=3), den)
}

pub fn gauss(r: &mut ChaCha8Rng) -> GaussScalar {
    GaussScalar::new(small_rat(r), if r.gen_bool(0.6) { small_rat(r) } else { rat(0, 1) })
}

pub fn nonzero_gauss(r: &mut ChaCha8Rng) -> GaussScalar {
    loop {
        let z = gauss(r);
        if !num_traits::Zero::is_zero(&z) {
            return z;
        }
    }
}

pub fn real_skew(r: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let mut m = vec![vec![rat(0, 1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = if r.gen_bool(0.2) { rat(0, 1) } else { small_rat(r) };
            m[i][j] = x.clone();
            m[j][i] = -x;
        }
    }
    m
}

pub fn complex_skew(r: &mut ChaCha8Rng, n: usize) -> Matrix<GaussScalar> {
    let (a, b) = (real_skew(r, n), real_skew(r, n));
    combine(&a, &b)
}

pub fn combine(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<GaussScalar> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| GaussScalar::new(p.clone(), q.clone())).collect()).collect()
}

pub fn to_complex(m: &Matrix<Rational>) -> Matrix<GaussScalar> {
    dirac::matrix_to_complex(m)
}

/// A random lagrangian `L(E, W)` with `E` of random dimension.
pub fn lagrangian(r: &mut ChaCha8Rng, n: usize) -> Lagrangian {
    let k = r.gen_range(0..=n);
    let gens: Matrix<GaussScalar> = (0..k).map(|_| (0..n).map(|_| gauss(r)).collect()).collect();
    let e: SubspaceComplex = Subspace::from_generators(n, gens).unwrap();
    dirac::from_distribution(&e, &complex_skew(r, n)).unwrap()
}

pub fn real_lagrangian(r: &mut ChaCha8Rng, n: usize) -> SubspaceReal {
    let k = r.gen_range(0..=n);
    let gens: Matrix<Rational> = (0..k).map(|_| (0..n).map(|_| small_rat(r)).collect()).collect();
    let e = Subspace::from_generators(n, gens).unwrap();
    dirac::from_distribution_real(&e, &real_skew(r, n)).unwrap()
}

/// A real lagrangian with prescribed range `E`.
pub fn real_lagrangian_on(r: &mut ChaCha8Rng, e: &SubspaceReal) -> SubspaceReal {
    dirac::from_distribution_real(e, &real_skew(r, e.ambient())).unwrap()
}

pub fn poly(r: &mut ChaCha8Rng, chart: &Chart, max_deg: u32, max_terms: usize) -> Poly {
    let n = chart.dim();
    let terms = (0..r.gen_range(0..=max_terms))
        .map(|_| {
            let mut e = vec![0u32; n];
            for _ in 0..r.gen_range(0..=max_deg) {
                e[r.gen_range(0..n)] += 1;
            }
            (e, gauss(r))
        })
        .collect::<Vec<_>>();
    terms.into_iter().fold(Poly::zero(chart), |acc, (e, c)| &acc + &Poly::monomial(chart, e, c))
}

pub fn real_poly(r: &mut ChaCha8Rng, chart: &Chart, max_deg: u32, max_terms: usize) -> Poly {
    poly(r, chart, max_deg, max_terms).re_part()
}

fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in index_sets(n, k - 1) {
            if rest.first().map_or(true, |&x| x > first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

pub fn multivector(r: &mut ChaCha8Rng, chart: &Chart, degree: usize) -> MultiField {
    let comps: Vec<(Vec<usize>, Poly)> =
        index_sets(chart.dim(), degree).into_iter().map(|idx| (idx, poly(r, chart, 2, 2))).collect();
    MultiField::from_comps(chart, degree, comps).unwrap()
}

pub fn form(r: &mut ChaCha8Rng, chart: &Chart, degree: usize) -> FormField {
    let comps: Vec<(Vec<usize>, Poly)> =
        index_sets(chart.dim(), degree).into_iter().map(|idx| (idx, poly(r, chart, 2, 2))).collect();
    FormField::from_comps(chart, degree, comps).unwrap()
}

pub fn real_bivector(r: &mut ChaCha8Rng, chart: &Chart) -> MultiField {
    let comps: Vec<(Vec<usize>, Poly)> =
        index_sets(chart.dim(), 2).into_iter().map(|idx| (idx, real_poly(r, chart, 2, 2))).collect();
    MultiField::from_comps(chart, 2, comps).unwrap()
}

pub fn bivector(r: &mut ChaCha8Rng, chart: &Chart) -> ComplexBivector {
    ComplexBivector::new(multivector(r, chart, 2)).unwrap()
}

/// A constant-coefficient complex bivector with the given matrices.
pub fn constant_bivector(chart: &Chart, p1: &Matrix<Rational>, p2: &Matrix<Rational>) -> ComplexBivector {
    let n = chart.dim();
    let mut comps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            comps.push((vec![i, j], Poly::constant(chart, GaussScalar::new(p1[i][j].clone(), p2[i][j].clone()))));
        }
    }
    ComplexBivector::new(MultiField::from_comps(chart, 2, comps).unwrap()).unwrap()
}

pub fn chart(n: usize) -> Chart {
    Chart::numbered("x", n).unwrap()
}

pub fn point(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rat(r)).collect()
}
