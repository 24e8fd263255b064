// Moser averaging and the splitting of a bivector along a cosymplectic slice.

use cxpoisson::normal_form::{mixed_check, moser_average, splitting_check, BundleChart, Epsilon};
use cxpoisson::poisson::ComplexBivector;
use cxpoisson::{parse_poly, rat, FormField, MultiField};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = BundleChart::new(&["u", "v"], &["q", "p"])?;
    let chart = bundle.chart().clone();
    let p = |s: &str| parse_poly(s, &chart);
    let pi = ComplexBivector::parse(&chart, &[(1, 2, "u"), (3, 4, "1")])?;

    let base_points = vec![vec![rat(1, 2), rat(3, 1)], vec![rat(-2, 1), rat(0, 1)]];
    let mixed = mixed_check(&pi, &bundle, &base_points)?;
    println!("mixed: {}, cosymplectic: {}", mixed.is_mixed(), mixed.is_cosymplectic());

    let xi1 = FormField::from_vec(&chart, vec![p("0")?, p("0")?, p("p")?, p("-q")?]);
    println!("average of d(xi1) = {}", moser_average(&bundle, &xi1.d())?);

    let x = pi.sharp(&xi1)?;
    println!("X = {x}");
    let eps = Epsilon { x: MultiField::from_vec(&chart, x.as_vec()?), xi1, xi2: FormField::zero(&chart, 1) };
    let points: Vec<_> = (0..4).map(|k| vec![rat(k, 2), rat(1, 3), rat(k - 1, 1), rat(2, k + 1)]).collect();
    let report = splitting_check(&pi, &bundle, &eps, &points)?;
    println!("B = {}, splitting verified: {}", report.b, report.passed());
    assert!(report.passed());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
