// Complex bivectors built from real data, including Poisson–Nijenhuis pairs.

use cxpoisson::poisson::{construct, nijenhuis_residuals, Construction};
use cxpoisson::{parse_poly, Chart, GaussScalar, MultiField, Poly};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chart = Chart::new(["q", "p"])?;
    let sigma = MultiField::from_comps(&chart, 2, [(vec![0, 1], Poly::one(&chart))])?;
    for c in [
        Construction::Complexify(sigma.clone()),
        Construction::Twist(sigma.clone()),
        Construction::Diagonal(sigma.clone()),
    ] {
        let pi = construct(c)?;
        println!("{} is Poisson: {}", pi.body(), pi.is_poisson());
    }

    let chart4 = Chart::new(["x1", "x2", "y1", "y2"])?;
    let s = MultiField::from_comps(&chart4, 2, [(vec![0, 2], Poly::one(&chart4)), (vec![1, 3], Poly::one(&chart4))])?;
    let two = parse_poly("2", &chart4)?;
    let (zero, one) = (Poly::zero(&chart4), Poly::one(&chart4));
    let n = vec![
        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), two.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), two],
    ];
    let res = nijenhuis_residuals(&s, &n)?;
    println!("Poisson–Nijenhuis residuals vanish: {}", res.all_zero());
    let pi = construct(Construction::Nijenhuis { sigma: s, n })?;
    println!("sigma + i sigma_N = {}", pi.body());
    assert!(pi.is_poisson());
    let scaled = pi.scale(&GaussScalar::from_ratios((1, 2), (1, 3)));
    assert!(scaled.is_poisson());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
