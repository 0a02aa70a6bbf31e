//! `numrange`: exact pencil curves, dual curves and sampled boundaries of
//! the numerical range from a matrix file.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Job};

#[derive(Parser, Debug)]
#[command(name = "numrange", version, about = "Numerical range and its dual LMI set")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix file (JSON), or a pair file with "a1" and "a2".
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Number of sampling angles.
    #[arg(long, global = true, default_value_t = 720)]
    grid: usize,

    /// Tolerance for the duality checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Factors of p, one polynomial in y0, y1, y2 per line.
    #[arg(long, global = true)]
    factors: Option<PathBuf>,

    /// Window of the F(A) panel: x1min,x1max,x2min,x2max.
    #[arg(long, global = true, allow_hyphen_values = true)]
    viewport: Option<String>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Print the Hermitian parts A1, A2 of A = A1 + i*A2.
    Decompose,
    /// Print p(y) = det(y0*I + y1*A1 + y2*A2).
    Pencil,
    /// Print the dual curve q(x) in primitive form.
    Dual {
        /// Also write gradient-image samples of Q as CSV here.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Inner and outer hulls of W(A) as CSV.
    SampleW,
    /// Boundary samples of F(A) as CSV.
    SampleF,
    /// Check the pairing between W(A) and F(A).
    Duality,
    /// Compare the determinant identity with A1*A2 = 0.
    Craig,
    /// Polytope, smooth or mixed numerical range.
    Classify,
    /// SVG with F(A), P, W(A) and Q.
    Render,
}

fn job(cli: &Cli) -> Result<Job, CliError> {
    if cli.grid < 3 {
        return Err(CliError::Input(format!("--grid must be at least 3, got {}", cli.grid)));
    }
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(CliError::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let viewport = cli.viewport.as_deref().map(commands::parse_viewport).transpose()?;
    let input = cli
        .input
        .clone()
        .ok_or_else(|| CliError::Input("missing --input <FILE>".into()))?;
    Ok(Job { input, grid: cli.grid, tol: cli.tol, out: cli.out.clone(), factors: cli.factors.clone(), viewport })
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let job = job(cli)?;
    let text = match &cli.command {
        Command::Decompose => commands::decompose(&job)?,
        Command::Pencil => commands::pencil(&job)?,
        Command::Dual { samples } => commands::dual(&job, samples.as_deref())?,
        Command::SampleW => commands::sample_w(&job)?,
        Command::SampleF => commands::sample_f(&job)?,
        Command::Duality => commands::duality(&job)?,
        Command::Craig => commands::craig(&job)?,
        Command::Classify => commands::classify(&job)?,
        Command::Render => commands::render(&job)?,
    };
    commands::emit(&job, &text.body)?;
    match text.failure {
        Some(msg) => Err(CliError::Check(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
