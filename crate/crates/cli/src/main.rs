//! `zamp`: compute coefficients, Laurent polynomials and series, run the
//! verification suites and the torus oracle, and print JSON-lines reports.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "zamp", version, about = "String-amplitude coefficient engine and verification suites")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Total-degree truncation for series
    #[arg(long, global = true, env = "ZAMP_ORDER")]
    pub order: Option<u32>,
    /// Working precision in decimal digits
    #[arg(long, global = true, env = "ZAMP_PRECISION")]
    pub precision: Option<u32>,
    /// Truncation N of the nested sums Z(k, r)
    #[arg(long = "z-limit", global = true, env = "ZAMP_Z_LIMIT")]
    pub z_limit: Option<u64>,
    /// Torus quadrature grid size
    #[arg(long, global = true, env = "ZAMP_GRID")]
    pub grid: Option<usize>,
    /// Largest weight 2p + 3q (or w) in weight-bounded checks
    #[arg(long = "max-weight", global = true, env = "ZAMP_MAX_WEIGHT")]
    pub max_weight: Option<u32>,
    /// Largest ℓ in Laurent-polynomial checks
    #[arg(long = "max-l", global = true, env = "ZAMP_MAX_L")]
    pub max_l: Option<u32>,
    /// Emit JSON lines (default)
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit plain text rendered from the JSON records
    #[arg(long, global = true, env = "ZAMP_TEXT")]
    pub text: bool,
    /// key = value configuration file, applied before flags and environment
    #[arg(long, global = true, env = "ZAMP_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a truncated generating series
    Expand {
        which: SeriesKind,
        #[arg(long, value_enum, default_value_t = RouteArg::Generating)]
        route: RouteArg,
    },
    /// Print a single coefficient
    Coeff(CoeffArgs),
    /// Print d_ℓ(Y) or b_ℓ(T)
    Laurent {
        which: LaurentKind,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Generating)]
        route: RouteArg,
    },
    /// Run a named verification suite
    Verify { which: Suite },
    /// Torus quadrature against the Laurent prediction (heuristic)
    Oracle(OracleArgs),
    /// Run the full acceptance suite
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Vcl,
    Vop,
    Wcl,
    Wop,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentKind {
    D,
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteArg {
    Generating,
    Direct,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    #[value(name = "e")]
    E,
    #[value(name = "C")]
    C,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "eta")]
    Eta,
    #[value(name = "lambda")]
    Lambda,
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "f")]
    F,
    #[value(name = "Z")]
    Z,
    #[value(name = "H")]
    H,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    pub which: CoeffKind,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<i64>,
    /// gamma only: generating = via e, direct = via P
    #[arg(long, value_enum, default_value_t = RouteArg::Generating)]
    pub route: RouteArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    #[value(name = "thm1")]
    Thm1,
    #[value(name = "thm2")]
    Thm2,
    #[value(name = "thm3")]
    Thm3,
    #[value(name = "wcl")]
    Wcl,
    #[value(name = "wop")]
    Wop,
    #[value(name = "svB")]
    SvB,
    #[value(name = "klt")]
    Klt,
    #[value(name = "lemma-sym")]
    LemmaSym,
    #[value(name = "rank")]
    Rank,
    #[value(name = "AJ")]
    Aj,
    #[value(name = "AN")]
    An,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    D,
    B,
    Green,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub which: OracleKind,
    #[arg(long, default_value_t = 2)]
    pub l: u32,
    /// Im τ (τ lies on the imaginary axis)
    #[arg(long)]
    pub tau: Option<f64>,
    /// green only: real part of z
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    pub re: f64,
    /// green only: imaginary part of z
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub im: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(commands::run(cli))
}
