//! Command-line arguments and their translation into series identifiers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use easum_core::formulas::Variant;
use easum_core::oracle::{TailModel, DEFAULT_N_MAX};
use easum_core::selftest::Suite;
use easum_core::series::SeriesId;

/// Evaluate Euler-Apery-type series through alternating multiple zeta values.
#[derive(Parser, Debug)]
#[command(name = "easum", version, about, long_about = None)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Closed-form table to use instead of the embedded one.
    #[arg(long, global = true, env = "EASUM_TABLE")]
    pub table: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one series.
    Eval(EvalArgs),
    /// Evaluate and verify every supported series up to a weight.
    Table(TableArgs),
    /// Run the built-in invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// `S_{orders,p}`: harmonic products with `--orders`.
    S,
    /// `S*`: `zeta*_n({1}_m)` numerator, optionally times `H_n` (`--orders 1`).
    Sstar,
    /// `S_{1m,p}`.
    Squad,
    /// `S_{1^3,p}`.
    Scubic,
    /// `T_{1,q}` with `H_2n`.
    T1,
    /// `U_{1,q}` with `O_n`.
    U1,
    /// Reciprocal `tS_q`.
    Ts,
    /// Reciprocal with `H_n`.
    Ts1,
    /// Reciprocal with `H_2n`.
    Tt1,
    /// Reciprocal with `O_n`.
    Tu1,
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    /// Absolute error target for the MZV evaluation.
    #[arg(long, default_value_t = 1e-10)]
    pub precision: f64,

    /// Terms summed directly by the oracle.
    #[arg(long = "nmax", default_value_t = DEFAULT_N_MAX)]
    pub n_max: u64,

    /// Tail model for the oracle.
    #[arg(long, default_value_t = TailModel::Richardson, value_parser = parse_tail)]
    pub tail: TailModel,

    /// Print expressions as LaTeX.
    #[arg(long)]
    pub latex: bool,
}

fn parse_tail(s: &str) -> Result<TailModel, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    /// Series key such as `S:1,4` or `tS:1,3`, instead of the family flags.
    #[arg(conflicts_with_all = ["family", "orders", "m", "p", "q"])]
    pub key: Option<String>,

    #[arg(long, value_enum, required_unless_present = "key")]
    pub family: Option<FamilyArg>,

    /// Comma-separated harmonic orders.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<u32>,

    #[arg(long)]
    pub m: Option<u32>,

    /// Denominator exponent.
    #[arg(long)]
    pub p: Option<u32>,

    /// Denominator exponent (alias of `--p`).
    #[arg(long, conflicts_with = "p")]
    pub q: Option<u32>,

    /// Alternative derivation, where one exists.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,

    /// Also sum the series directly and compare.
    #[arg(long)]
    pub verify: bool,

    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long, default_value_t = 6)]
    pub max_weight: u32,

    /// Skip the direct-summation oracle.
    #[arg(long)]
    pub no_oracle: bool,

    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SelftestArgs {
    /// Run a single suite (exact, mzv, integral, contour, oracle).
    #[arg(long, value_parser = parse_suite)]
    pub only: Option<Suite>,

    /// Tolerance for the floating-point gates.
    #[arg(long, default_value_t = 1e-8)]
    pub precision: f64,
}

impl EvalArgs {
    /// The series the flags describe.
    pub fn series(&self) -> Result<SeriesId, String> {
        if let Some(key) = &self.key {
            return key.parse().map_err(|e: easum_core::series::SeriesError| e.to_string());
        }
        let family = self.family.ok_or("missing --family")?;
        let exponent = || self.p.or(self.q).ok_or_else(|| "missing --p/--q".to_string());
        let m = || self.m.ok_or_else(|| "missing --m".to_string());
        let no_orders = |name: &str| {
            if self.orders.is_empty() {
                Ok(())
            } else {
                Err(format!("--orders does not apply to --family {name}"))
            }
        };
        let no_m = |name: &str| match self.m {
            None => Ok(()),
            Some(_) => Err(format!("--m does not apply to --family {name}")),
        };
        let simple = |name: &str, make: fn(u32) -> SeriesId| -> Result<SeriesId, String> {
            no_orders(name)?;
            no_m(name)?;
            Ok(make(exponent()?))
        };
        match family {
            FamilyArg::S => {
                no_m("s")?;
                Ok(SeriesId::s(&self.orders, exponent()?))
            }
            FamilyArg::Sstar => {
                let with_h = match self.orders.as_slice() {
                    [] => false,
                    [1] => true,
                    _ => return Err("--family sstar takes --orders 1 or no orders".into()),
                };
                Ok(SeriesId::sstar(with_h, m()?, exponent()?))
            }
            FamilyArg::Squad => {
                no_orders("squad")?;
                Ok(SeriesId::s(&[1, m()?], exponent()?))
            }
            FamilyArg::Scubic => {
                no_orders("scubic")?;
                no_m("scubic")?;
                Ok(SeriesId::s(&[1, 1, 1], exponent()?))
            }
            FamilyArg::T1 => simple("t1", SeriesId::t1),
            FamilyArg::U1 => simple("u1", SeriesId::u1),
            FamilyArg::Ts => simple("ts", SeriesId::ts),
            FamilyArg::Ts1 => simple("ts1", SeriesId::ts1),
            FamilyArg::Tt1 => simple("tt1", SeriesId::tt1),
            FamilyArg::Tu1 => simple("tu1", SeriesId::tu1),
        }
    }
}
