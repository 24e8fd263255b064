// Linear algebra of complex lagrangian subspaces.

use cxpoisson::dirac::{
    check, complex_tangent_sum, conjugate, graph_bivector, graph_twoform, hat, indices, scalar_dot, tilde,
    Lagrangian,
};
use cxpoisson::GaussScalar;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = |re: i64, im: i64| GaussScalar::from_ratios((re, 1), (im, 1));
    let p = vec![
        vec![g(0, 0), g(1, 0), g(0, 1)],
        vec![g(-1, 0), g(0, 0), g(2, 1)],
        vec![g(0, -1), g(-2, -1), g(0, 0)],
    ];
    let l = graph_bivector(&p)?;
    println!("{:?}", indices(&l));

    let c = check(&l);
    let h = hat(&scalar_dot(&GaussScalar::i(), &conjugate(&l)));
    assert_eq!(c, h);
    println!("check(L) = hat(i·conj L), dimension {}", c.dim());

    let t = tilde(&l)?;
    assert_eq!(tilde(&t)?, t);
    println!("tilde(L) is tilde-fixed; real index {}", indices(&t).real_index);

    let w1 = vec![vec![g(0, 0), g(1, 0)], vec![g(-1, 0), g(0, 0)]];
    let l1 = Lagrangian::complexify(&cxpoisson::dirac::real_slice(&graph_twoform(&w1)?))?;
    let l2 = Lagrangian::tangent(2);
    let sum = complex_tangent_sum(&cxpoisson::dirac::real_slice(&l1), &cxpoisson::dirac::real_slice(&l2))?;
    println!("complex tangent sum: {:?}", indices(&sum));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
