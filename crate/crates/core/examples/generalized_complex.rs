// The generalized complex map of a bivector with invertible imaginary part.

use cxpoisson::cli::commands::fmt_matrix;
use cxpoisson::dirac::graph_bivector;
use cxpoisson::geometry::gcs_matrix;
use cxpoisson::poisson::ComplexBivector;
use cxpoisson::{rat, Chart};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chart = Chart::new(["a", "b", "c", "d"])?;
    let pi = ComplexBivector::parse(&chart, &[(1, 2, "1 + i"), (3, 4, "2*i"), (1, 3, "1/2")])?;
    let pt = vec![rat(0, 1); 4];
    let gcs = gcs_matrix(&pi, &pt)?;
    println!("sigma = {}", fmt_matrix(&gcs.sigma));
    assert!(gcs.squares_to_minus_one());
    assert!(gcs.preserves_pairing());
    assert_eq!(&gcs.plus_i_eigenspace(), graph_bivector(&pi.matrix_at(&pt))?.space());
    println!("J^2 = -1, J is orthogonal and its +i eigenspace is the graph");

    let degenerate = ComplexBivector::parse(&chart, &[(1, 2, "i"), (3, 4, "1")])?;
    println!("{}", gcs_matrix(&degenerate, &pt).unwrap_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
