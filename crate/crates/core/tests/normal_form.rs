mod common;

use common::*;
use cxpoisson::normal_form::{self, BundleChart, Epsilon, Extension};
use cxpoisson::poisson::ComplexBivector;
use cxpoisson::{rat, FormField, GaussScalar, MultiField, Poly};
use proptest::prelude::*;

fn bundle() -> BundleChart {
    BundleChart::new(&["u", "v"], &["q", "p"]).unwrap()
}

/// A form with every monomial of positive fiber weight.
fn weighted_form(r: &mut rand_chacha::ChaCha8Rng, b: &BundleChart, degree: usize) -> FormField {
    let ch = b.chart();
    let f = form(r, ch, degree);
    let y = Poly::coordinate(ch, b.fiber_indices()[0]);
    let z = Poly::coordinate(ch, b.fiber_indices()[1]);
    f.mul_fn(&(&y + &z))
}

fn fiber_euler(b: &BundleChart) -> MultiField {
    let ch = b.chart();
    let comps = b.fiber_indices().into_iter().map(|k| (vec![k], Poly::coordinate(ch, k)));
    MultiField::from_comps(ch, 1, comps).unwrap()
}

fn constant_form(b: &BundleChart, w: &[Vec<GaussScalar>]) -> FormField {
    let ch = b.chart();
    let n = ch.dim();
    let comps = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], Poly::constant(ch, w[i][j].clone())));
    FormField::from_comps(ch, 2, comps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn moser_average_inverts_the_fiber_euler_derivative(seed in any::<u64>(), degree in 1usize..3) {
        let mut r = rng(seed);
        let b = bundle();
        let beta = weighted_form(&mut r, &b, degree);
        let avg = normal_form::moser_average(&b, &beta).unwrap();
        prop_assert_eq!(avg.lie_derivative(&fiber_euler(&b)).unwrap(), beta.clone());
        let other = weighted_form(&mut r, &b, degree);
        prop_assert_eq!(
            normal_form::moser_average(&b, &beta.add(&other)).unwrap(),
            avg.add(&normal_form::moser_average(&b, &other).unwrap())
        );
        prop_assert_eq!(normal_form::moser_average(&b, &beta.d()).unwrap(), avg.d());
    }

    #[test]
    fn local_model_on_the_zero_section(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = bundle();
        let base = b.base_chart().unwrap();
        let pi_n = constant_bivector(&base, &real_skew(&mut r, 2), &real_skew(&mut r, 2));
        let pn = pi_n.matrix_at(&[rat(0, 1), rat(0, 1)]);
        let w = complex_skew(&mut r, 4);
        prop_assume!(!num_traits::Zero::is_zero(&w[2][3]));
        let ext = Extension::new(&b, constant_form(&b, &w)).unwrap();
        prop_assert!(normal_form::extension_check(&b, &ext, &[point(&mut r, 2)]).passed());
        let pt = b.zero_section(&point(&mut r, 2));
        let m = normal_form::local_model_at(&b, Some(&pi_n), &ext, &pt).unwrap();
        prop_assert!(m.is_graph.is_some());
        // {(π_N ξ, v) + (ξ, 0) + ι_X W} for base covectors ξ and fiber vectors v.
        for k in 0..4 {
            let mut xi = vec![GaussScalar::int(0); 2];
            let mut x = vec![GaussScalar::int(0); 4];
            if k < 2 {
                xi[k] = GaussScalar::int(1);
                x[0] = pn[k][0].clone();
                x[1] = pn[k][1].clone();
            } else {
                x[k] = GaussScalar::int(1);
            }
            let mut v: Vec<GaussScalar> = x.clone();
            for j in 0..4 {
                let mut c = if j < 2 { xi[j].clone() } else { GaussScalar::int(0) };
                for i in 0..4 {
                    c = &c + &(&x[i] * &w[i][j]);
                }
                v.push(c);
            }
            prop_assert!(m.lagrangian.contains(&v));
        }
        let mut block = w.clone();
        for i in 0..4 {
            for j in 0..4 {
                if (i < 2) || (j < 2) {
                    block[i][j] = GaussScalar::int(0);
                }
            }
        }
        let ext = Extension::new(&b, constant_form(&b, &block)).unwrap();
        let m = normal_form::local_model_at(&b, Some(&pi_n), &ext, &pt).unwrap();
        prop_assert_eq!(m.is_graph, Some(true));
        prop_assert_eq!(m.matches_sum, Some(true));
        let off: Vec<_> = pt.iter().enumerate().map(|(k, x)| if k >= 2 { rat(1, 1) } else { x.clone() }).collect();
        let m = normal_form::local_model_at(&b, Some(&pi_n), &ext, &off).unwrap();
        prop_assert_eq!(m.is_graph, None);
        prop_assert!(m.lagrangian.is_lagrangian());
    }

    #[test]
    fn products_split_with_the_matching_section(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = bundle();
        let ch = b.chart().clone();
        let c = nonzero_gauss(&mut r);
        let base_coeff = {
            let f = poly(&mut r, &ch, 2, 3);
            f.vanish_vars(&b.fiber_indices())
        };
        let pi = ComplexBivector::new(
            MultiField::from_comps(&ch, 2, vec![(vec![0, 1], base_coeff), (vec![2, 3], Poly::constant(&ch, c.clone()))]).unwrap(),
        )
        .unwrap();
        let (q, p) = (Poly::coordinate(&ch, 2), Poly::coordinate(&ch, 3));
        let ci = c.inv();
        let theta = FormField::from_comps(&ch, 1, vec![(vec![2], p.scale(&ci)), (vec![3], q.scale(&-ci.clone()))]).unwrap();
        let x = pi.sharp(&theta).unwrap();
        prop_assert_eq!(&x, &fiber_euler(&b));
        let (xi1, xi2) = theta.decompose();
        let eps = Epsilon { x, xi1, xi2 };
        let pts: Vec<_> = (0..4).map(|_| point(&mut r, 4)).collect();
        let rep = normal_form::splitting_check(&pi, &b, &eps, &pts).unwrap();
        prop_assert!(rep.passed());
        prop_assert!(rep.warnings.is_empty());
        let expected = FormField::from_comps(&ch, 2, vec![(vec![2, 3], Poly::constant(&ch, -ci))]).unwrap();
        prop_assert_eq!(rep.extension(), expected);
        prop_assert!(rep.fiber_matches_leaf_form.iter().all(|&ok| !ok));
    }
}

#[test]
fn weight_zero_monomials_are_refused() {
    let b = bundle();
    let ch = b.chart();
    let f = FormField::from_comps(ch, 2, vec![(vec![0, 1], Poly::coordinate(ch, 0))]).unwrap();
    assert!(normal_form::moser_average(&b, &f).is_err());
}
