// Schouten brackets, exterior derivatives and the Cartan formula.

use cxpoisson::{parse_poly, Chart, FormField, MultiField};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chart = Chart::new(["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &chart);
    let x = MultiField::from_vec(&chart, vec![p("y")?, p("-x")?, p("0")?]);
    let y = MultiField::from_vec(&chart, vec![p("0")?, p("z")?, p("i*y")?]);
    println!("[X, Y] = {}", x.lie_bracket(&y)?);

    let pi = MultiField::from_comps(&chart, 2, [(vec![0, 1], p("z")?), (vec![1, 2], p("x")?)])?;
    println!("[pi, pi] = {}", pi.schouten(&pi)?);
    println!("[X, pi] = {}", x.schouten(&pi)?);

    let alpha = FormField::from_vec(&chart, vec![p("x*y")?, p("z^2")?, p("i")?]);
    let d_alpha = alpha.d();
    println!("d alpha = {d_alpha}");
    assert!(d_alpha.d().is_zero());

    let cartan = d_alpha.contract(&x)?.add(&alpha.contract(&x)?.d());
    assert_eq!(alpha.lie_derivative(&x)?, cartan);
    println!("L_X alpha = {cartan}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
