// Pointwise distributions, regularity over a sample and leafwise forms.

use cxpoisson::geometry::{a_pi_at, default_grid, hat_sign_check, presymplectic_at, rank_profiles, tilde_leaf_check};
use cxpoisson::poisson::xyz_family;
use cxpoisson::cli::commands::{fmt_matrix, fmt_point};
use cxpoisson::rat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pi = xyz_family(&rat(0, 1), &rat(1, 1))?;
    let grid = default_grid(3, 15);
    let summary = rank_profiles(&pi, &grid);
    for p in summary.profiles.iter().take(3) {
        println!(
            "{}: dim E = {}, dim Delta = {}, dim D = {}, real index = {}",
            fmt_point(&p.point),
            p.dim_e,
            p.dim_delta,
            p.dim_d,
            p.real_index
        );
    }
    println!(
        "regular: {}, strongly regular: {}, quasi-real: {}",
        summary.consistent_with_regular, summary.consistent_with_strongly_regular, summary.quasi_real_on_sample
    );

    let pt = &grid[4];
    let a = a_pi_at(&pi, pt);
    println!("A_pi: real dimension {}, complex span {}", a.real.dim(), a.complexified.dim());
    let data = presymplectic_at(&pi, pt);
    println!(
        "omega_re = {}, omega_im = {}, well defined: {}",
        fmt_matrix(&data.omega_re),
        fmt_matrix(&data.omega_im),
        data.well_defined
    );
    println!("sign relations hold: {}", hat_sign_check(&pi, pt));
    println!("{:?}", tilde_leaf_check(&pi, pt)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
