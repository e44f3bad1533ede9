mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::Format;

/// Exit status for a computation that finished but raised a flag.
const EXIT_FLAGGED: u8 = 1;
/// Exit status for bad arguments or a rejected input.
const EXIT_USAGE: u8 = 2;

const MIN_DIGITS: u32 = 20;
const MIN_TERMS: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "reglab", version, about = "Periods and real regulators of elliptic surfaces with a cyclic cover")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalArgs {
    /// Significant decimal digits
    #[arg(long, global = true, env = "REGLAB_PREC", default_value_t = 60)]
    prec: u32,
    /// Series truncation
    #[arg(long, global = true, default_value_t = 64)]
    terms: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Do not report raised flags on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// q-expansions of E3a, E3b, or the coefficients a_n(j), b_n(j)
    Eisenstein(EisensteinArgs),
    /// Table of I(j), J(j) for 1 ≤ j ≤ l-1
    Periods(PeriodsArgs),
    /// Period matrix, bordered determinant and regulator value
    Regulator(RegulatorArgs),
    /// Admissibility and invariants of a Weierstrass family
    Classify(ClassifyArgs),
    /// Gauss–Manin connection matrix and residues
    GmConnection(GmArgs),
    /// Built-in families
    Families {
        #[arg(value_enum, default_value_t = FamiliesAction::List)]
        action: FamiliesAction,
    },
}

#[derive(Debug, Args)]
struct EisensteinArgs {
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    /// Number of coefficients
    #[arg(long = "N", short = 'N', default_value_t = 10)]
    n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    Quadrature,
    Both,
}

#[derive(Debug, Args)]
struct PeriodsArgs {
    #[arg(long)]
    l: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Series)]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableMethod {
    Series,
    Quadrature,
}

#[derive(Debug, Args)]
struct RegulatorArgs {
    #[arg(long)]
    l: u32,
    /// How the period table is computed
    #[arg(long, value_enum, default_value_t = TableMethod::Series)]
    method: TableMethod,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Catalog label i..v, `modular`, or `custom` with --g2/--g3
    #[arg(long, default_value = "modular")]
    family: String,
    /// Coefficients of g2(t), lowest first, comma separated
    #[arg(long, allow_hyphen_values = true)]
    g2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g3: Option<String>,
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Constant in κy² = 4x³ - g2 x - g3; defaults to -12 for the modular family, 1 otherwise
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
}

#[derive(Debug, Args)]
struct GmArgs {
    #[arg(long, allow_hyphen_values = true, requires = "g3", conflicts_with = "f")]
    g2: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "g2")]
    g3: Option<String>,
    /// f(x) as `;`-separated x-coefficients, each a `,`-separated list of t-coefficients
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long)]
    genus: Option<usize>,
    /// Points at which to take residues (Weierstrass input only); defaults to 0 and 1
    #[arg(long = "at", allow_hyphen_values = true, value_delimiter = ' ')]
    at: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamiliesAction {
    List,
}

/// Settings every output records, so that a run can be repeated exactly.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub digits: u32,
    pub terms: usize,
    /// Quadrature stops when two levels agree to `10^-quadrature_tolerance_exp`.
    pub quadrature_tolerance_exp: u32,
    pub format: Format,
}

impl RunConfig {
    fn from_args(g: &GlobalArgs) -> Result<Self, String> {
        if g.prec < MIN_DIGITS {
            return Err(format!("--prec must be at least {MIN_DIGITS}, got {}", g.prec));
        }
        if g.terms < MIN_TERMS {
            return Err(format!("--terms must be at least {MIN_TERMS}, got {}", g.terms));
        }
        Ok(RunConfig { digits: g.prec, terms: g.terms, quadrature_tolerance_exp: g.prec, format: g.format })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match commands::run(&cli.command, &config) {
        Ok(out) => {
            print!("{}", output::render(&out, &config));
            if out.flags.is_empty() {
                ExitCode::SUCCESS
            } else {
                if !cli.global.quiet {
                    for f in &out.flags {
                        eprintln!("flag: {f}");
                    }
                }
                ExitCode::from(EXIT_FLAGGED)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
