use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cxpoisson::arith::parse_rational;
use cxpoisson::cli::{run_source, CliError, Command, Options};
use cxpoisson::Rational;

#[derive(Parser)]
#[command(name = "cxpoisson", version, about = "Exact checks for complex Poisson and Dirac structures")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Extra sample points, `;`-separated, coordinates `,`-separated (e.g. "0,1,1/2;1,1,1").
    #[arg(long, global = true)]
    points: Option<String>,
    /// Number of generated grid points.
    #[arg(long, global = true, default_value_t = 20)]
    grid_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Comma-separated check ids; overrides the problem file.
    #[arg(long, global = true)]
    check: Option<String>,
    /// Record wall-clock time per check.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Integrability of every bivector.
    Check { file: PathBuf },
    /// Rank profiles and pointwise invariants over a sample.
    Invariants { file: PathBuf },
    /// Run the lagrangian pipelines of the file.
    Dirac { file: PathBuf },
    /// Mixed submanifold, Moser averaging and splitting checks.
    NormalForm { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

fn parse_points(s: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split(',')
                .map(|x| parse_rational(x.trim()).map_err(|e| CliError::Invalid(format!("--points `{x}`: {e}"))))
                .collect()
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, file) = match &cli.command {
        Sub::Check { file } => (Command::Check, file),
        Sub::Invariants { file } => (Command::Invariants, file),
        Sub::Dirac { file } => (Command::Dirac, file),
        Sub::NormalForm { file } => (Command::NormalForm, file),
    };
    let result = (|| {
        let src = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
        let opts = Options {
            points: cli.points.as_deref().map(parse_points).transpose()?.unwrap_or_default(),
            grid_size: cli.grid_size,
            checks: cli.check.as_ref().map(|c| c.split(',').map(|s| s.trim().to_string()).collect()),
            timing: cli.timing,
        };
        run_source(cmd, &src, &opts)
    })();
    match result {
        Ok(report) => {
            match cli.format {
                Format::Human => print!("{}", report.human()),
                Format::Machine => print!("{}", report.machine()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
