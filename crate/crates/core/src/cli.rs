//! `tailsum` command-line surface.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::app::{self, Fault, OutputRecord};
use crate::coefficients::{self, CoefficientKind};
use crate::error::Error;
use crate::rational::{parse_rational, Rational};
use crate::summation::{split_sum, TruncationPolicy};
use crate::term::{inverse_power, DEFAULT_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tailsum", version, about = "Euler-Maclaurin and Boole summation of series tails")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    BernoulliLike,
    TangentLike,
    EmWeights,
    BooleWeights,
}

impl From<KindArg> for CoefficientKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::BernoulliLike => CoefficientKind::BernoulliLike,
            KindArg::TangentLike => CoefficientKind::TangentLike,
            KindArg::EmWeights => CoefficientKind::EmWeight,
            KindArg::BooleWeights => CoefficientKind::BooleWeight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    InversePower,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Split point: terms below it are summed directly.
    #[arg(long, default_value_t = app::DEFAULT_SPLIT)]
    pub split: i64,
    /// Largest derivative order the smallest-term scan may reach.
    #[arg(long, default_value_t = app::DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Keep exactly derivative orders 0..=K instead of stopping at the smallest term.
    #[arg(long)]
    pub fixed_order: Option<usize>,
    /// Significant digits in the rendered value.
    #[arg(long, default_value_t = app::DEFAULT_OUTPUT_DIGITS)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl RunArgs {
    fn policy(&self) -> TruncationPolicy {
        match self.fixed_order {
            Some(k) => TruncationPolicy::FixedOrder(k),
            None => TruncationPolicy::SmallestTerm { max_order: self.max_order },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a coefficient or weight table.
    Coeffs {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// ζ(n) by split sum.
    Zeta {
        n: i64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// ζ(n) for even n from the π identity.
    ZetaPi {
        n: i64,
        #[arg(long, default_value_t = app::DEFAULT_OUTPUT_DIGITS)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// η(n) = 1 - 2^-n + 3^-n - ... by split sum.
    Eta {
        n: i64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generic split sum over a built-in term family.
    Sum {
        #[arg(long, value_enum, default_value_t = Family::InversePower)]
        family: Family,
        /// Exponent, e.g. `2`, `3/2` or `1.5`.
        #[arg(long, value_parser = parse_exponent)]
        exponent: Rational,
        #[arg(long, default_value_t = 1)]
        start: i64,
        #[arg(long)]
        alternating: bool,
        /// Digit budget for non-integer exponents.
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        precision: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the self-checks and print PASS/FAIL lines.
    Verify {
        #[arg(long, default_value_t = app::VERIFY_ORDER)]
        order: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_exponent(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn emit_record(out: &mut dyn Write, record: &OutputRecord, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", record.to_json()),
        Format::Csv => write!(out, "{}", record.to_csv()),
        Format::Plain => write!(out, "{}", record.to_plain()),
    }
}

pub fn render_table(kind: CoefficientKind, values: &[Rational], format: Format) -> String {
    match format {
        Format::Csv => values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{i},{},{}\n", v.numer(), v.denom()))
            .collect(),
        Format::Plain => values.iter().enumerate().map(|(i, v)| format!("{i} {v}\n")).collect(),
        Format::Json => {
            let rows: Vec<_> = values
                .iter()
                .enumerate()
                .map(|(i, v)| serde_json::json!({"index": i, "num": v.numer().to_string(), "den": v.denom().to_string()}))
                .collect();
            let doc = serde_json::json!({"kind": kind.name(), "values": rows});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("table serializes"))
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match cli.command {
        Command::Coeffs { kind, count, format } => {
            let kind = CoefficientKind::from(kind);
            let table = coefficients::table(kind, count)?;
            out.write_all(render_table(kind, &table.values, format).as_bytes()).map_err(io)?;
        }
        Command::Zeta { n, run } => {
            let record = app::zeta(n, run.split, run.policy(), run.digits)?;
            emit_record(out, &record, run.format).map_err(io)?;
        }
        Command::ZetaPi { n, digits, format } => {
            let record = app::zeta_via_pi(n, digits)?;
            emit_record(out, &record, format).map_err(io)?;
        }
        Command::Eta { n, run } => {
            let record = app::eta(n, run.split, run.policy(), run.digits)?;
            emit_record(out, &record, run.format).map_err(io)?;
        }
        Command::Sum { family: Family::InversePower, exponent, start, alternating, precision, run } => {
            let f = inverse_power(exponent)?.with_digits(precision);
            let report = split_sum(&f, &start.into_rational(), &run.split.into_rational(), run.policy(), alternating)?;
            emit_record(out, &OutputRecord::from_report(&report, run.digits), run.format).map_err(io)?;
        }
        Command::Verify { order, inject_fault } => {
            let fault = if inject_fault { Fault::TamperBooleWeight } else { Fault::None };
            let report = app::verify_suite_with(order, fault);
            for o in &report.outcomes {
                writeln!(out, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail).map_err(io)?;
            }
            let failed = report.outcomes.iter().filter(|o| !o.passed).count();
            writeln!(out, "{} checks, {} failed", report.outcomes.len(), failed).map_err(io)?;
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_COMPUTE });
        }
    }
    Ok(EXIT_OK)
}

trait IntoRational {
    fn into_rational(self) -> Rational;
}

impl IntoRational for i64 {
    fn into_rational(self) -> Rational {
        crate::rational::int(self)
    }
}

/// Parses `argv` (program name first), runs, and returns the exit status.
pub fn cli_dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e @ Error::InvalidArgument(_)) | Err(e @ Error::InvalidPolicy(_)) | Err(e @ Error::Unsupported(_)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}
