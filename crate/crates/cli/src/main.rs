mod commands;
mod parse;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use report::{CliError, Outcome};

/// Continued fractions of Laurent series and square roots of polynomials,
/// reduced modulo primes and specialised at parameter values.
#[derive(Parser, Debug)]
#[command(name = "cfreduce", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand sqrt(D), a truncated series or Cantor's G_3 into partial quotients.
    Expand(ExpandArgs),
    /// Reduce an input mod p or specialise t, optionally verifying that the
    /// reduced convergents are the convergents of the reduced series.
    Reduce(ReduceArgs),
    /// Regulators of sqrt(D) modulo a list of primes.
    Regulator(SweepArgs),
    /// Decide non-periodicity over Q from regulators modulo primes.
    Yu(SweepArgs),
    /// The quartic family (X^2 + u)^2 + 4v(X + w).
    Family(FamilyArgs),
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct InputArgs {
    /// Polynomial D whose square root is expanded, e.g. "X^4-2*X^3+3*X^2+2*X+2".
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub sqrt: Option<String>,
    /// Truncated series: "polynomial part, c1, c2, ..." with c_i the coefficient
    /// of X^-i, or "-" to read one item per line from stdin.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Cantor's product of (1 + X^(-3^h)).
    #[arg(long, group = "source")]
    pub g3: bool,
    /// Guaranteed coefficients for series inputs.
    #[arg(long)]
    pub prec: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Reduce modulo this prime.
    #[arg(long = "mod", value_name = "P", conflicts_with = "param_value")]
    pub modulus: Option<u64>,
    /// Specialise t to this rational.
    #[arg(long, value_name = "TAU", allow_hyphen_values = true)]
    pub param_value: Option<String>,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    /// Number of partial quotients. Defaults to 10 for --sqrt and to every
    /// guaranteed quotient for series inputs.
    #[arg(long)]
    pub quotients: Option<usize>,
    /// Engine for --sqrt.
    #[arg(long, value_enum, default_value_t = Engine::Surd)]
    pub engine: Engine,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Surd,
    Series,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    /// Number of source partial quotients.
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    /// Compare reduced convergents with the direct expansion.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sqrt: String,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    /// Maximum partial quotients searched per prime.
    #[arg(long, default_value_t = 500)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Defaults to v - w^2.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub v: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub w: String,
    /// Set u = v - w^2.
    #[arg(long, conflicts_with = "u")]
    pub normalize: bool,
    /// Number of (b_h, c_h) pairs.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Evaluate the torsion condition for this order.
    #[arg(long, value_name = "M")]
    pub check_m: Option<u32>,
    #[command(flatten)]
    pub target: TargetArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let (name, result): (&str, Result<Outcome, CliError>) = match &cli.command {
        Command::Expand(a) => ("expand", commands::expand(a)),
        Command::Reduce(a) => ("reduce", commands::reduce(a)),
        Command::Regulator(a) => ("regulator", commands::regulator(a)),
        Command::Yu(a) => ("yu", commands::yu(a)),
        Command::Family(a) => ("family", commands::family(a)),
    };
    let mut stdout = std::io::stdout().lock();
    let code = match result {
        Ok(out) => {
            let written = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if written.is_err() {
                return ExitCode::from(report::EXIT_FAILURE);
            }
            out.code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&e.to_json(name)).expect("serializable"));
            }
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code)
}
