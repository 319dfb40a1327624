//! `cesaro`: time averages of signals from their transforms, cross-checked
//! against direct averaging.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use cesaro::{Domain, Error};
use clap::{Args, Parser, Subcommand};

/// Exit codes. Verdict classes first, then error classes.
pub mod exit {
    pub const APPLICABLE: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const FORMAL_ONLY: u8 = 2;
    pub const DIVERGENT: u8 = 3;
    pub const UNSTABLE: u8 = 4;
    pub const CONTOUR: u8 = 5;
    pub const CORPUS_FAILURE: u8 = 6;
}

#[derive(Parser)]
#[command(name = "cesaro", version, about = "Time averages of signals from their Laplace and z-transforms")]
struct Cli {
    /// TOML file overriding numerical tolerances.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized final value of F(z) or F(s), with an optional oracle check.
    Average(AverageArgs),
    /// Output average of a stable LTI system from its input average.
    System(SystemArgs),
    /// Write the running-average trace of a signal as CSV.
    Trace(TraceArgs),
    /// Average of a product sequence f[n] g[n] by contour quadrature.
    Product(ProductArgs),
    /// Run the shipped golden corpus and print a pass/fail table.
    Corpus,
}

#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct DomainFlag {
    /// Discrete time: z-transform, limit at z = 1.
    #[arg(long)]
    z: bool,
    /// Continuous time: Laplace transform, limit at s = 0.
    #[arg(long)]
    s: bool,
}

impl DomainFlag {
    pub fn domain(self) -> Domain {
        if self.s {
            Domain::S
        } else {
            Domain::Z
        }
    }
}

/// A transform: ascending coefficient lists, or a signal spec file.
#[derive(Args, Clone)]
pub struct TransformInput {
    /// Numerator coefficients, constant first: `1,0` is z (or s).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "den", conflicts_with = "spec")]
    num: Option<Vec<f64>>,
    /// Denominator coefficients, constant first: `-1,1` is z - 1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "num", conflicts_with = "spec")]
    den: Option<Vec<f64>>,
    /// Signal spec JSON file.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct OracleOptions {
    /// Also average the signal directly over N samples.
    #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "100000")]
    oracle: Option<usize>,
    /// Continuous oracle horizon.
    #[arg(long, default_value_t = 1000.0)]
    t_max: f64,
    /// Continuous oracle step.
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
}

#[derive(Args)]
pub struct AverageArgs {
    #[command(flatten)]
    domain: DomainFlag,
    #[command(flatten)]
    input: TransformInput,
    #[command(flatten)]
    oracle: OracleOptions,
}

#[derive(Args)]
pub struct SystemArgs {
    #[command(flatten)]
    domain: DomainFlag,
    /// Transfer function numerator, constant first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    num: Vec<f64>,
    /// Transfer function denominator, constant first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    den: Vec<f64>,
    /// Average of the input signal.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "xspec", conflicts_with = "xspec")]
    xavg: Option<f64>,
    /// Input signal spec; its average is computed first.
    #[arg(long, value_name = "FILE")]
    xspec: Option<PathBuf>,
    /// Filter the input directly over N samples (discrete, needs --xspec).
    #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "100000", requires = "xspec")]
    oracle: Option<usize>,
}

#[derive(Args)]
pub struct TraceArgs {
    /// Signal spec JSON file.
    #[arg(long, value_name = "FILE")]
    spec: PathBuf,
    /// Number of samples for a discrete signal.
    #[arg(long, default_value_t = 100_000)]
    horizon: usize,
    /// Horizon for a continuous signal.
    #[arg(long, default_value_t = 1000.0)]
    t_max: f64,
    /// Step for a continuous signal.
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// CSV output path.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
pub struct ProductArgs {
    #[arg(long = "f-num", value_delimiter = ',', allow_hyphen_values = true, requires = "f_den", conflicts_with = "f_spec")]
    f_num: Option<Vec<f64>>,
    #[arg(long = "f-den", value_delimiter = ',', allow_hyphen_values = true, requires = "f_num")]
    f_den: Option<Vec<f64>>,
    #[arg(long = "f-spec", value_name = "FILE")]
    f_spec: Option<PathBuf>,
    #[arg(long = "g-num", value_delimiter = ',', allow_hyphen_values = true, requires = "g_den", conflicts_with = "g_spec")]
    g_num: Option<Vec<f64>>,
    #[arg(long = "g-den", value_delimiter = ',', allow_hyphen_values = true, requires = "g_num")]
    g_den: Option<Vec<f64>>,
    #[arg(long = "g-spec", value_name = "FILE")]
    g_spec: Option<PathBuf>,
    /// Fixed contour radius; chosen per evaluation point when absent.
    #[arg(long)]
    radius: Option<f64>,
    /// Minimum trapezoid nodes on the contour.
    #[arg(long, default_value_t = 256)]
    points: usize,
    /// Samples for the direct product average.
    #[arg(long, default_value_t = 100_000)]
    horizon: usize,
}

/// Anything that stops a command: a message for stderr and an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: exit::USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnstableSystem { .. } | Error::PoleAtOne | Error::PoleAtZero => exit::UNSTABLE,
            Error::PoleOnContour(_) | Error::ExtrapolationUnstable { .. } => exit::CONTOUR,
            _ => exit::USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own code for bad usage collides with the verdict codes
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::APPLICABLE });
        }
    };
    let result = input::read_tolerances(cli.config.as_deref()).and_then(|tol| match cli.command {
        Command::Average(args) => commands::average(&args, &tol),
        Command::System(args) => commands::system(&args, &tol),
        Command::Trace(args) => commands::trace(&args),
        Command::Product(args) => commands::product(&args, &tol),
        Command::Corpus => commands::corpus(&tol),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
