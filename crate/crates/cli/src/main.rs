use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qformkit_core::Rational;

mod commands;
mod demo;

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "qformkit",
    version,
    about = "Exact zero-set containment checks for quadratic forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Tolerance for the floating-point eigen step.
    #[arg(long, global = true, default_value_t = qformkit_core::semidefinite::DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,

    /// Seed for cone-point sampling.
    #[arg(long, global = true, default_value_t = qformkit_core::poly::DEFAULT_SEED)]
    seed: u64,

    /// Number of cone points to sample before giving up on a witness.
    #[arg(long, global = true, default_value_t = qformkit_core::poly::DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: usize,

    /// Speed of light for `lorentz`, as an integer or n/d.
    #[arg(long = "c", global = true, default_value = "1", value_parser = parse_rational)]
    c: Rational,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inertia, classification and congruence diagonal of a form.
    Analyze { form: PathBuf },
    /// Diagonalizing basis B and diagonal of BᵀQB.
    Canon { form: PathBuf },
    /// Decide whether the zero set of q lies in the zero set of r.
    Contain { q: PathBuf, r: PathBuf },
    /// Same question for a homogeneous polynomial r of any degree.
    PolyContain { q: PathBuf, r: PathBuf },
    /// Simultaneously diagonalize a semidefinite pair.
    Simdiag { q: PathBuf, r: PathBuf },
    /// Check whether a linear map preserves the Minkowski interval.
    Lorentz { transform: PathBuf },
    /// Run the worked examples end to end.
    Demo {
        /// Read fixtures from this directory instead of the built-in copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

fn parse_budget(s: &str) -> Result<usize, String> {
    let b: usize = s.parse().map_err(|e| format!("{e}"))?;
    if b >= 1 {
        Ok(b)
    } else {
        Err("budget must be at least 1".into())
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("{e}"))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Analyze { form } => commands::analyze(form),
        Command::Canon { form } => commands::canon(form),
        Command::Contain { q, r } => commands::contain(q, r),
        Command::PolyContain { q, r } => commands::poly_contain(q, r, cli.budget, cli.seed),
        Command::Simdiag { q, r } => commands::simdiag(q, r, cli.tol),
        Command::Lorentz { transform } => commands::lorentz(transform, &cli.c),
        Command::Demo { fixtures } => demo::run(fixtures.as_deref(), cli.tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.human);
            }
            if let Some(msg) = &out.note {
                eprintln!("{msg}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("qformkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
