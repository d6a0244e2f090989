//! g2kit: octonion algebra checks, G2 element classification and
//! centralizer verification with deterministic seeded reports.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use g2kit::commands::{self, CommandOutcome};
use g2kit_core::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Parser)]
#[command(name = "g2kit", version, about = "Compact G2 as octonion automorphisms: \
axioms, classification, centralizers")]
struct Cli {
    /// Scalar backend (classification commands require float)
    #[arg(long, global = true, value_enum, default_value_t = Backend::Float)]
    backend: Backend,

    /// Seed for the xorshift64* generator
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of randomized trials (default depends on the subcommand)
    #[arg(short = 'n', long, global = true)]
    trials: Option<usize>,

    /// Write the JSON report to this path as well as stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Representative angle theta in radians (default 2π/5)
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Representative angle phi in radians (default 2π/7)
    #[arg(long, global = true)]
    phi: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the octonion algebra property suite
    Axioms,
    /// Compute the derivation algebra basis and report its dimension
    Derivations,
    /// Classify an element file into its orbit type
    Classify { element: PathBuf },
    /// Reproduce the six-row orbit-type table
    Table,
    /// Classify seeded random elements and report the type histogram
    Sample,
    /// Measure the centralizer dimension of an element file
    Centralizer { element: PathBuf },
    /// Extend a subalgebra isomorphism file to a full automorphism
    ExtendIso { iso: PathBuf },
    /// Centralizer verification suites
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Commutation vs membership for elements fixing a quaternion
    /// subalgebra pointwise
    Rp {
        /// Coordinates of the norm-1 quaternion point p, comma separated
        #[arg(long, default_value = "0.6,0.8,0,0")]
        p: String,
    },
    /// The involution case: everything fixing the quaternion subalgebra
    /// setwise commutes
    Involution,
}

fn classification_tolerance() -> Result<Option<f64>> {
    match std::env::var("G2KIT_TOLERANCE") {
        Ok(raw) => {
            let tol: f64 = raw
                .parse()
                .with_context(|| format!("G2KIT_TOLERANCE must be a number, got {raw:?}"))?;
            if tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                bail!("G2KIT_TOLERANCE must be positive");
            }
            Ok(Some(tol))
        }
        Err(_) => Ok(None),
    }
}

fn require_float(backend: Backend, what: &str) -> Result<()> {
    if backend != Backend::Float {
        bail!("{what} requires --backend float (spectra are not representable exactly)");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<CommandOutcome> {
    let tol = classification_tolerance()?;
    if cli.trials == Some(0) {
        bail!("--trials must be at least 1");
    }
    let theta = cli.theta.unwrap_or(commands::default_angles().0);
    let phi = cli.phi.unwrap_or(commands::default_angles().1);
    match &cli.command {
        Command::Axioms => {
            let trials = cli.trials.unwrap_or(1000);
            match cli.backend {
                Backend::Exact => commands::axioms::<Rational>(trials, cli.seed),
                Backend::Float => commands::axioms::<f64>(trials, cli.seed),
            }
        }
        Command::Derivations => match cli.backend {
            Backend::Exact => commands::derivations::<Rational>(),
            Backend::Float => commands::derivations::<f64>(),
        },
        Command::Classify { element } => {
            require_float(cli.backend, "classify")?;
            commands::classify(element, tol)
        }
        Command::Table => {
            require_float(cli.backend, "table")?;
            commands::table(theta, phi, tol)
        }
        Command::Sample => {
            require_float(cli.backend, "sample")?;
            commands::sample(cli.trials.unwrap_or(1000), cli.seed, tol)
        }
        Command::Centralizer { element } => match cli.backend {
            Backend::Exact => commands::centralizer_exact(element),
            Backend::Float => commands::centralizer_float(element, tol),
        },
        Command::ExtendIso { iso } => match cli.backend {
            Backend::Exact => commands::extend_iso::<Rational>(iso),
            Backend::Float => commands::extend_iso::<f64>(iso),
        },
        Command::Verify { suite } => {
            require_float(cli.backend, "verify")?;
            match suite {
                VerifySuite::Rp { p } => {
                    commands::verify_rp(p, cli.trials.unwrap_or(200), cli.seed, tol)
                }
                VerifySuite::Involution => {
                    commands::verify_involution(cli.trials.unwrap_or(100), cli.seed, tol)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            let rendered = format!(
                "{}\n",
                serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
            );
            println!("{}", rendered.trim_end());
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
