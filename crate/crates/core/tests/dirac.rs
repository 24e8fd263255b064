mod common;

use common::*;
use cxpoisson::dirac::{self, graph_bivector, graph_twoform, Lagrangian, SubspaceReal};
use cxpoisson::linalg::{identity, mat_add, mat_mul, mat_scale, nullspace, rank, transpose, Matrix, Subspace};
use cxpoisson::{GaussScalar, Rational};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn is_real_lagrangian(s: &SubspaceReal) -> bool {
    let b = s.basis();
    s.ambient() == 2 * b.len() && b.iter().all(|u| b.iter().all(|v| num_traits::Zero::is_zero(&dirac::pairing_real(u, v))))
}

/// Realified kernel computation: `L` as a real subspace of `ℝ^{4n}`,
/// keeping vectors with real tangent part.
fn realified(l: &Lagrangian, hat: bool) -> SubspaceReal {
    let n = l.n();
    let mut rows: Matrix<Rational> = Vec::new();
    for b in l.basis() {
        rows.push(b.iter().map(|z| z.re().clone()).chain(b.iter().map(|z| z.im().clone())).collect());
        rows.push(b.iter().map(|z| -z.im().clone()).chain(b.iter().map(|z| z.re().clone())).collect());
    }
    // Coefficient vectors c with Σ c_k rows_k having vanishing imaginary tangent part.
    let eqs: Matrix<Rational> = (0..n).map(|j| rows.iter().map(|r| r[2 * n + j].clone()).collect()).collect();
    let sols = nullspace(&eqs, rows.len());
    let out = sols
        .iter()
        .map(|c| {
            let v: Vec<Rational> = (0..4 * n).map(|s| c.iter().zip(&rows).map(|(a, r)| a * &r[s]).sum()).collect();
            let cot = if hat { &v[3 * n..] } else { &v[n..2 * n] };
            v[..n].iter().chain(cot).cloned().collect()
        })
        .collect();
    Subspace::from_generators(2 * n, out).unwrap()
}

fn quasi_real_lagrangian(r: &mut ChaCha8Rng, n: usize) -> Lagrangian {
    let k = r.gen_range(0..=n);
    let gens: Matrix<GaussScalar> = (0..k).map(|_| (0..n).map(|_| GaussScalar::real(small_rat(r))).collect()).collect();
    dirac::from_distribution(&Subspace::from_generators(n, gens).unwrap(), &complex_skew(r, n)).unwrap()
}

fn complex_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<GaussScalar> {
    (0..rows).map(|_| (0..cols).map(|_| gauss(r)).collect()).collect()
}

fn scalar(x: i64, y: i64) -> GaussScalar {
    GaussScalar::from_ratios((x, 1), (y, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_lagrangians_are_lagrangian(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        prop_assert_eq!(l.dim(), n);
        for u in l.basis() {
            for v in l.basis() {
                prop_assert!(num_traits::Zero::is_zero(&dirac::pairing(u, v)));
            }
        }
        prop_assert!(is_real_lagrangian(&dirac::hat(&l)));
        prop_assert!(is_real_lagrangian(&dirac::check(&l)));
        prop_assert!(dirac::tilde(&l).unwrap().is_lagrangian());
    }

    #[test]
    fn hat_and_check_match_realified_oracle(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        prop_assert_eq!(dirac::hat(&l), realified(&l, true));
        prop_assert_eq!(dirac::check(&l), realified(&l, false));
    }

    #[test]
    fn hat_and_check_through_products(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        let bar = dirac::conjugate(&l);
        let half = GaussScalar::from_ratios((1, 2), (0, 1));
        let c = dirac::scalar_dot(&half, &dirac::tangent_product(&l, &bar).unwrap());
        prop_assert_eq!(dirac::real_slice(&c), dirac::check(&l));
        let minus_bar = dirac::scalar_dot(&scalar(-1, 0), &bar);
        let h = dirac::scalar_dot(&GaussScalar::from_ratios((0, 1), (-1, 2)), &dirac::tangent_product(&l, &minus_bar).unwrap());
        prop_assert_eq!(dirac::real_slice(&h), dirac::hat(&l));
    }

    #[test]
    fn hat_of_rotated_conjugate_is_check(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        let rotated = dirac::scalar_dot(&GaussScalar::i(), &dirac::conjugate(&l));
        prop_assert_eq!(dirac::hat(&rotated), dirac::check(&l));
    }

    #[test]
    fn tilde_is_idempotent_and_fixes_exactly_quasi_real(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = if r.gen_bool(0.5) { quasi_real_lagrangian(&mut r, n) } else { lagrangian(&mut r, n) };
        let t = dirac::tilde(&l).unwrap();
        prop_assert_eq!(dirac::tilde(&t).unwrap(), t.clone());
        let ix = dirac::indices(&l);
        prop_assert_eq!(t == l, ix.dim_delta == ix.dim_d);
        prop_assert_eq!(dirac::indices(&t).dim_range, ix.dim_delta);
    }

    #[test]
    fn scalar_actions_on_graphs(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let p = complex_skew(&mut r, n);
        let z = nonzero_gauss(&mut r);
        let w = nonzero_gauss(&mut r);
        let g = graph_bivector(&p).unwrap();
        prop_assert_eq!(dirac::scalar_dot(&z, &g), graph_bivector(&mat_scale(&p, &z.inv())).unwrap());
        prop_assert_eq!(dirac::scalar_bullet(&z, &g), graph_bivector(&mat_scale(&p, &z)).unwrap());
        let l = lagrangian(&mut r, n);
        prop_assert_eq!(dirac::scalar_dot(&z, &dirac::scalar_dot(&w, &l)), dirac::scalar_dot(&(&z * &w), &l));
        prop_assert_eq!(dirac::scalar_bullet(&z, &dirac::scalar_bullet(&w, &l)), dirac::scalar_bullet(&(&z * &w), &l));
        prop_assert_eq!(dirac::scalar_dot(&z, &dirac::scalar_bullet(&z, &l)), l.clone());
        prop_assert_eq!(dirac::conjugate(&dirac::conjugate(&l)), l.clone());
        let pbar: Matrix<GaussScalar> = p.iter().map(|row| row.iter().map(GaussScalar::conj).collect()).collect();
        prop_assert_eq!(dirac::conjugate(&g), graph_bivector(&pbar).unwrap());
        prop_assert_eq!(dirac::conjugate(&dirac::scalar_dot(&z, &l)), dirac::scalar_dot(&z.conj(), &dirac::conjugate(&l)));
    }

    #[test]
    fn graph_round_trips_and_products(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let (p, q) = (complex_skew(&mut r, n), complex_skew(&mut r, n));
        let gp = graph_bivector(&p).unwrap();
        prop_assert_eq!(gp.as_bivector(), Some(p.clone()));
        prop_assert_eq!(graph_twoform(&p).unwrap().as_twoform(), Some(p.clone()));
        prop_assert_eq!(dirac::cotangent_product(&gp, &graph_bivector(&q).unwrap()).unwrap(), graph_bivector(&mat_add(&p, &q)).unwrap());
        prop_assert_eq!(
            dirac::tangent_product(&graph_twoform(&p).unwrap(), &graph_twoform(&q).unwrap()).unwrap(),
            graph_twoform(&mat_add(&p, &q)).unwrap()
        );
        if let Some(inv) = cxpoisson::linalg::inverse(&p) {
            prop_assert_eq!(gp, graph_twoform(&inv).unwrap());
        }
    }

    #[test]
    fn b_field_and_beta_transforms(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let (b1, b2, w) = (complex_skew(&mut r, n), complex_skew(&mut r, n), complex_skew(&mut r, n));
        let l = lagrangian(&mut r, n);
        prop_assert_eq!(
            dirac::b_field(&b1, &dirac::b_field(&b2, &l).unwrap()).unwrap(),
            dirac::b_field(&mat_add(&b1, &b2), &l).unwrap()
        );
        prop_assert_eq!(dirac::b_field(&b1, &graph_twoform(&w).unwrap()).unwrap(), graph_twoform(&mat_add(&w, &b1)).unwrap());
        prop_assert_eq!(dirac::b_field(&b1, &Lagrangian::tangent(n)).unwrap(), graph_twoform(&b1).unwrap());
        prop_assert_eq!(dirac::beta(&b1, &graph_bivector(&w).unwrap()).unwrap(), graph_bivector(&mat_add(&w, &b1)).unwrap());
        prop_assert_eq!(dirac::beta(&b1, &Lagrangian::cotangent(n)).unwrap(), graph_bivector(&b1).unwrap());
        let back = dirac::b_field(&mat_scale(&b1, &scalar(-1, 0)), &dirac::b_field(&b1, &l).unwrap()).unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn pullback_and_pushforward_of_graphs(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let a = complex_matrix(&mut r, n, m);
        let w = complex_skew(&mut r, n);
        let at = transpose(&a, m);
        prop_assert_eq!(
            dirac::backward(&a, &graph_twoform(&w).unwrap()).unwrap(),
            graph_twoform(&mat_mul(&mat_mul(&at, &w), &a)).unwrap()
        );
        let p = complex_skew(&mut r, m);
        prop_assert_eq!(
            dirac::forward(&a, &graph_bivector(&p).unwrap()).unwrap(),
            graph_bivector(&mat_mul(&mat_mul(&a, &p), &at)).unwrap()
        );
        let l = lagrangian(&mut r, n);
        prop_assert_eq!(dirac::backward(&identity(n), &l).unwrap(), l.clone());
        prop_assert_eq!(dirac::forward(&identity(n), &l).unwrap(), l.clone());
        prop_assert!(dirac::backward(&a, &l).unwrap().is_lagrangian());
    }

    #[test]
    fn complex_tangent_sum_recovers_parts_on_common_range(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l1 = real_lagrangian(&mut r, n);
        let e = Subspace::from_generators(n, l1.basis().iter().map(|v| v[..n].to_vec()).collect()).unwrap();
        let l2 = real_lagrangian_on(&mut r, &e);
        let sum = dirac::complex_tangent_sum(&l1, &l2).unwrap();
        prop_assert_eq!(dirac::check(&sum), l1.clone());
        prop_assert_eq!(dirac::hat(&sum), l2.clone());
        let cot = dirac::complex_cotangent_sum(&l1, &l2).unwrap();
        prop_assert!(cot.is_lagrangian());
    }

    #[test]
    fn cotangent_tilde_fixes_bivector_graphs(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let p = complex_skew(&mut r, n);
        let g = graph_bivector(&p).unwrap();
        prop_assert_eq!(dirac::tilde_cot(&g).unwrap(), g);
        let w = complex_skew(&mut r, n);
        let gw = graph_twoform(&w).unwrap();
        prop_assert_eq!(dirac::tilde(&gw).unwrap(), gw);
    }

    #[test]
    fn real_index_of_bivector_graph_is_nullity_of_imaginary_part(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let (p1, p2) = (real_skew(&mut r, n), real_skew(&mut r, n));
        let ix = dirac::indices(&graph_bivector(&combine(&p1, &p2)).unwrap());
        prop_assert_eq!(ix.real_index, n - rank(&p2, n));
        prop_assert_eq!(ix.kernel_dim, 0);
        prop_assert_eq!(ix.dim_range, rank(&combine(&p1, &p2), n));
    }

    #[test]
    fn real_slice_and_its_orthogonal(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        let k = dirac::k_and_perp(&l);
        prop_assert!(k.perp_projects_to_d);
        prop_assert!(k.k_projects_to_kernel);
        prop_assert_eq!(k.k.dim() + k.k_perp.dim(), 2 * n);
    }

    #[test]
    fn dirac_form_recovers_distribution(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = lagrangian(&mut r, n);
        let (e, eps) = dirac::dirac_form(&l);
        prop_assert_eq!(&e, &l.range());
        let w = {
            // Any skew extension of eps rebuilds L.
            let b = e.basis();
            let k = b.len();
            let mut full: Matrix<GaussScalar> = b.clone();
            for j in 0..n {
                let mut u = vec![GaussScalar::int(0); n];
                u[j] = GaussScalar::int(1);
                if !Subspace::from_generators(n, full.clone()).unwrap().contains(&u) {
                    full.push(u);
                }
            }
            let mut m = vec![vec![GaussScalar::int(0); n]; n];
            for a in 0..k {
                for c in 0..k {
                    m[a][c] = eps[a][c].clone();
                }
            }
            let inv = cxpoisson::linalg::inverse(&full).unwrap();
            mat_mul(&mat_mul(&inv, &m), &transpose(&inv, n))
        };
        prop_assert_eq!(dirac::from_distribution(&e, &w).unwrap(), l);
    }
}
