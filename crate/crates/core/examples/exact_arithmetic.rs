// Gaussian rationals and polynomials over them.

use cxpoisson::{parse_poly, rat, Chart, GaussScalar};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z = GaussScalar::from_ratios((3, 2), (-1, 1));
    let w = z.inv();
    assert_eq!(&z * &w, GaussScalar::int(1));
    println!("z = {z}, 1/z = {w}, |z|^2 = {}", z.norm_sqr());

    let chart = Chart::new(["x", "y"])?;
    let f = parse_poly("(x + i*y)^2 - 1/2*x*y", &chart)?;
    println!("f = {f}");
    println!("df/dx = {}", f.partial(0));
    println!("f(1, 2) = {}", f.eval(&[rat(1, 1), rat(2, 1)]));
    println!("Re f = {}, Im f = {}", f.re_part(), f.im_part());

    match parse_poly("x + / y", &chart) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
