//! `biharm`: exact and numerical second-variation reports for the Clifford torus.

mod commands;
mod output;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use biharm_core::operators::OperatorKind;
use biharm_core::oracle::DEFAULT_GRID;
use biharm_core::spectrum::DEFAULT_CUTOFF;
use biharm_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

use output::{envelope, error_envelope, Outcome};

#[derive(Parser)]
#[command(name = "biharm", version, about = "Second variation of the biharmonic Clifford torus in S^4")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,
    /// Quadrature grid size per axis (power of two, at least 8).
    #[arg(long, default_value_t = DEFAULT_GRID, global = true, value_parser = parse_grid)]
    grid_n: usize,
    /// Seed for randomised checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Operator {
    I2,
    J,
    Jp,
    I2proj,
}

#[derive(Subcommand)]
enum Command {
    /// Index, nullity and per-block spectra of one operator.
    Spectrum {
        #[arg(long, value_enum)]
        operator: Operator,
        /// Exponent of the p-energy (operator jp only).
        #[arg(long)]
        p: Option<f64>,
        /// Comma-separated exponents for a J_p sweep (operator jp only).
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_CUTOFF, value_parser = parse_cutoff)]
        cutoff: u32,
    },
    /// Exact verification of the kernel of I2.
    Kernel,
    /// Floating-point quadrature checks.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
    /// Reduced bienergy of the equivariant family: critical points and Hessian.
    Equivariant {
        #[arg(long, default_value_t = 0.5)]
        r1: f64,
        #[arg(long, default_value_t = 0.5)]
        r2: f64,
    },
    /// Reference-value regression table and the exact property suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_CUTOFF, value_parser = parse_cutoff)]
        cutoff: u32,
    },
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Finite-difference Hessian against the exact pairing (I2 V, W).
    Hessian {
        /// First section: 1..10 (Killing sections), nu, eta, gamma or theta.
        #[arg(long, requires = "j", conflicts_with = "random")]
        i: Option<String>,
        #[arg(long, requires = "i")]
        j: Option<String>,
        /// Number of random section pairs with frequencies at most 2.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Derivatives of the bienergy along the normalised V_nu variation.
    Variation {
        /// Derivative order 1..4; all orders when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        order: Option<u8>,
    },
    /// Rayleigh quotient of J on a conformal field V_a.
    Conformal {
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        a: Vec<f64>,
    },
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 8 || !n.is_power_of_two() {
        return Err(format!("grid size must be a power of two >= 8, got {n}"));
    }
    Ok(n)
}

fn parse_cutoff(s: &str) -> Result<u32, String> {
    let k: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if k < 2 {
        return Err(format!("cutoff must be at least 2, got {k}"));
    }
    Ok(k)
}

/// Usage errors detected after parsing; exit status 2.
struct Usage(String);

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => Failure::Usage(m),
            other => Failure::Core(other),
        }
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let grid_n = cli.grid_n;
    Ok(match &cli.command {
        Command::Spectrum { operator, p, sweep, cutoff } => {
            if *operator != Operator::Jp && (p.is_some() || sweep.is_some()) {
                return Err(Usage("--p and --sweep apply to --operator jp only".into()).into());
            }
            match (operator, p, sweep) {
                (Operator::Jp, None, Some(grid)) => commands::sweep(grid, *cutoff)?,
                (Operator::Jp, Some(_), Some(_)) => return Err(Usage("give either --p or --sweep, not both".into()).into()),
                (Operator::Jp, None, None) => return Err(Usage("--operator jp needs --p or --sweep".into()).into()),
                (op, p, _) => {
                    let kind = match op {
                        Operator::I2 => OperatorKind::I2,
                        Operator::J => OperatorKind::J,
                        Operator::I2proj => OperatorKind::I2Projected,
                        Operator::Jp => OperatorKind::Jp { p: p.expect("checked above") },
                    };
                    commands::spectrum(kind, *cutoff)?
                }
            }
        }
        Command::Kernel => commands::kernel()?,
        Command::Oracle { check } => match check {
            OracleCheck::Hessian { i: Some(i), j: Some(j), random: None } => commands::hessian_pair(i, j, grid_n)?,
            OracleCheck::Hessian { i: None, j: None, random: Some(n) } => commands::hessian_random(*n, cli.seed, grid_n)?,
            OracleCheck::Hessian { .. } => return Err(Usage("oracle hessian needs --i and --j, or --random N".into()).into()),
            OracleCheck::Variation { order } => {
                let orders: Vec<usize> = match order {
                    Some(o) => vec![*o as usize],
                    None => vec![1, 2, 3, 4],
                };
                commands::variation(&orders, grid_n)?
            }
            OracleCheck::Conformal { a } => {
                let a: [f64; 4] = a
                    .as_slice()
                    .try_into()
                    .map_err(|_| Usage(format!("--a takes four comma-separated numbers, got {}", a.len())))?;
                commands::conformal(a, grid_n)?
            }
        },
        Command::Equivariant { r1, r2 } => commands::equivariant(*r1, *r2, grid_n)?,
        Command::Selftest { cutoff } => {
            let (report, text) = selftest::run(*cutoff, cli.seed, grid_n)?;
            let passed = report.rows.iter().all(|r| r.passed);
            Outcome::new(&report, text, passed)
        }
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::iter::once("biharm".to_string()).chain(std::env::args().skip(1)).collect();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            match cli.output {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&envelope(&argv, &outcome)).expect("JSON"))),
                Format::Text => emit(&outcome.text),
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Core(e) => (1, "internal", e.to_string()),
            };
            if let Format::Json = cli.output {
                emit(&format!("{}\n", serde_json::to_string_pretty(&error_envelope(&argv, kind, &msg)).expect("JSON")));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
