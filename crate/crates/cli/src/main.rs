//! `schmidt`: runs the schmidt-core analyses and writes JSON or CSV reports.
//!
//! Exit status: 0 when every identity passes its tolerance, 1 when one fails,
//! 2 on bad input or usage.

mod commands;
mod input;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Ctx;
use schmidt_core::ToleranceConfig;

const EXIT_PASS: u8 = 0;
const EXIT_IDENTITY_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "schmidt", version, about = "Numerical checks for compressions of unitary operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance for every identity check, replacing the per-check defaults.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for generated fixtures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Dimension of generated fixtures (grid size for prolate and halfline).
    #[arg(long, global = true)]
    size: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PairArgs {
    /// Matrix Market file; its column space is the first subspace.
    #[arg(long)]
    p: Option<PathBuf>,
    /// Matrix Market file; its column space is the second subspace.
    #[arg(long)]
    q: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Halmos decomposition of two projections.
    Halmos(PairArgs),
    /// Spectra of PQ, P − Q, PQ⊥, P⊥Q⊥ and [P, Q].
    Relations(PairArgs),
    /// Spectrum and explicit eigenvectors of [P, Q].
    Commutator(PairArgs),
    /// Minimal geodesic from R(P) to R(Q) and the Davis symmetry.
    Geodesic(PairArgs),
    /// Idempotent with range R(P) and nullspace R(Q).
    Oblique(PairArgs),
    /// Halmos and truncated Sz.-Nagy–Foias dilations of a contraction.
    Dilate {
        /// Matrix Market file holding the contraction A.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Truncation: block indices −N..N.
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Toeplitz and Hankel blocks of z^k or of a Blaschke product.
    Toeplitz {
        /// Zeros of a Blaschke symbol, one "re im" per line.
        #[arg(long)]
        theta: Option<PathBuf>,
        /// Symbol z^k when no --theta is given.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i32,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Compressed shift on the model space of a Blaschke product.
    Modelspace {
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Singular values below one for the symbol B_a / B_b, by three routes.
    Rational {
        #[arg(long = "zeros-a")]
        zeros_a: Option<PathBuf>,
        #[arg(long = "zeros-b")]
        zeros_b: Option<PathBuf>,
    },
    /// Bilateral shift compressed to symmetric sequences on −N..N.
    Shiftsym {
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Time–band limiting eigenvalues.
    Prolate {
        #[arg(long, value_parser = input::parse_range, default_value = "-1,1", allow_hyphen_values = true)]
        interval: (f64, f64),
        #[arg(long, value_parser = input::parse_range, default_value = "-0.5,0.5", allow_hyphen_values = true)]
        band: (f64, f64),
    },
    /// Half-line compression of the Fourier transform on Hermite functions.
    Halfline {
        /// Largest Hermite index pair k (uses ψ_0..ψ_{2k+1}).
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Every invariant on seeded fixtures of dimension --size.
    Selftest,
}

fn run(cli: Cli) -> anyhow::Result<report::Report> {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            anyhow::bail!("--tol must be a nonnegative number");
        }
    }
    let ctx = Ctx {
        cfg: ToleranceConfig::default(),
        seed: cli.seed,
        size: cli.size,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Halmos(a) => commands::halmos(&ctx, &a.p, &a.q),
        Command::Relations(a) => commands::relations(&ctx, &a.p, &a.q),
        Command::Commutator(a) => commands::commutator(&ctx, &a.p, &a.q),
        Command::Geodesic(a) => commands::geodesic(&ctx, &a.p, &a.q),
        Command::Oblique(a) => commands::oblique(&ctx, &a.p, &a.q),
        Command::Dilate { matrix, n } => commands::dilate(&ctx, matrix, *n),
        Command::Toeplitz { theta, power, n } => commands::toeplitz(&ctx, theta, *power, *n),
        Command::Modelspace { theta } => commands::modelspace(&ctx, theta),
        Command::Rational { zeros_a, zeros_b } => commands::rational(&ctx, zeros_a, zeros_b),
        Command::Shiftsym { n } => commands::shiftsym(&ctx, *n),
        Command::Prolate { interval, band } => commands::prolate(&ctx, *interval, *band),
        Command::Halfline { n } => commands::halfline(&ctx, *n),
        Command::Selftest => commands::selftest(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_PASS });
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let written = match &out {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(EXIT_INPUT_ERROR);
    }
    if report.pass {
        ExitCode::from(EXIT_PASS)
    } else {
        for (name, c) in report.checks.iter().filter(|(_, c)| !c.pass) {
            eprintln!("FAIL {name}: defect {:e} > tolerance {:e}", c.defect, c.tolerance);
        }
        ExitCode::from(EXIT_IDENTITY_FAILURE)
    }
}
