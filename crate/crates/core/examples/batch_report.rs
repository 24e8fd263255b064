// Driving the batch front end from code.

use cxpoisson::cli::{run_source, Command, Options};

const PROBLEM: &str = r#"
[chart]
vars = ["x", "y", "z"]

[[bivector]]
name = "pi"
terms = [
  { i = 1, j = 2, coeff = "1" },
  { i = 1, j = 3, coeff = "i" },
  { i = 2, j = 3, coeff = "y + i*z" },
]
"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_source(Command::Check, PROBLEM, &Options::default())?;
    print!("{}", report.human());
    assert_eq!(report.exit_code(), 0);

    let opts = Options { grid_size: 4, checks: Some(vec!["ranks".into(), "strongly_regular".into()]), ..Options::default() };
    let report = run_source(Command::Invariants, PROBLEM, &opts)?;
    print!("{}", report.machine());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
