// Integrability and brackets of a complex Poisson bivector on three-space.

use cxpoisson::poisson::{xyz_family, ComplexBivector};
use cxpoisson::{parse_poly, rat};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pi = xyz_family(&rat(1, 1), &rat(2, 1))?;
    println!("pi = {}", pi.body());
    assert!(pi.is_poisson());
    assert!(pi.jacobi_pde_residuals().iter().all(|r| r.value.is_zero()));

    let chart = pi.chart().clone();
    let (x, y, z) = (parse_poly("x", &chart)?, parse_poly("y", &chart)?, parse_poly("z", &chart)?);
    println!("{{x, y}} = {}", pi.bracket(&x, &y)?);
    println!("{{y, z}} = {}", pi.bracket(&y, &z)?);
    println!("X_x = {}", pi.hamiltonian(&x)?);

    let broken = ComplexBivector::parse(&chart, &[(1, 2, "1"), (1, 3, "i"), (2, 3, "y^2 + i*z")])?;
    println!("perturbed: [pi, pi] = {}", broken.jacobi_residual());
    for r in broken.jacobi_pde_residuals().iter().filter(|r| !r.value.is_zero()) {
        println!("  residual {:?} {:?}: {}", r.triple, r.part, r.value);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
