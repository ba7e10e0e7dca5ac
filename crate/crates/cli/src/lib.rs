//! Argument handling for the `expderiv` binary.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error,
//! 3 verification failure. Normal output goes to `out`, diagnostics to
//! `err`; nothing is written to `out` when a command fails.

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use expderiv_core::{
    coeff_closed, evaluate_derivative, evaluate_derivative_exact, expand, max_nonzero_parts,
    partition_count, verify, Error, ExactPoint, FloatPoint, Format, MultiplicityVector,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Text and LaTeX documents get unwieldy well before JSON does.
pub const MAX_TEXT_ORDER: u32 = 40;
pub const MAX_JSON_ORDER: u32 = 60;
pub const MAX_COEFF_ORDER: u64 = 1000;
pub const MAX_EVAL_ORDER: u32 = 40;
pub const MAX_COUNT_ORDER: u32 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "expderiv", version, about = "Exact derivatives of exp(f(x))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the expansion of (e^f)^(N)
    Expand {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Print the coefficient of one monomial, given as k_1,k_2,...
    Coeff {
        #[arg(long)]
        order: u64,
        #[arg(long, allow_hyphen_values = true)]
        mult: String,
    },
    /// Print the number of partitions of N
    Count {
        #[arg(long)]
        order: u32,
    },
    /// Print the largest number of distinct part sizes in a partition of N
    Maxparts {
        #[arg(long)]
        order: u64,
    },
    /// Evaluate (e^f)^(N) from f(x) and f'(x), f''(x), ...
    Eval {
        #[arg(long)]
        order: u32,
        #[arg(long, allow_hyphen_values = true)]
        f0: String,
        #[arg(long, allow_hyphen_values = true)]
        derivs: String,
        /// Keep rational arithmetic and print f0 and the bracketed sum
        #[arg(long)]
        exact: bool,
    },
    /// Run the built-in equivalence and identity checks
    Verify {
        #[arg(long)]
        max_order: u32,
    },
}

fn parse_mults(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad multiplicity {part:?}: {e}"))
        })
        .collect()
}

/// Parses `p/q` or a bare integer, sign allowed on `p` only.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("bad rational {s:?}"))?;
    let den = match den {
        Some(q) if q.bytes().all(|b| b.is_ascii_digit()) && !q.is_empty() => {
            BigInt::from_str(q).map_err(|_| format!("bad rational {s:?}"))?
        }
        Some(_) => return Err(format!("bad rational {s:?}")),
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Float-mode values: a decimal literal, or a rational `p/q`.
fn parse_float(s: &str) -> Result<f64, String> {
    if s.contains('/') {
        let r = parse_rational(s)?;
        return r
            .to_f64()
            .ok_or_else(|| format!("{s:?} is not representable"));
    }
    let v = f64::from_str(s.trim()).map_err(|_| format!("bad number {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(v)
}

fn parse_list<T>(s: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse).collect()
}

enum Failure {
    Usage(String),
    Domain(String),
    Verify { report: String, summary: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn order_guard(what: &'static str, order: u64, max: u64) -> Result<(), Failure> {
    if order > max {
        return Err(Error::OrderOutOfRange { what, order, max }.into());
    }
    Ok(())
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Expand { order, format } => {
            let max = match format {
                FormatArg::Json => MAX_JSON_ORDER,
                _ => MAX_TEXT_ORDER,
            };
            order_guard("expand", u64::from(order), u64::from(max))?;
            Ok(format!("{}\n", expand(order)?.render(format.into())))
        }
        Command::Coeff { order, mult } => {
            order_guard("coeff", order, MAX_COEFF_ORDER)?;
            let k = MultiplicityVector::from_mults(parse_mults(&mult).map_err(Failure::Usage)?);
            if k.order() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    actual: k.order(),
                }
                .into());
            }
            Ok(format!("{}\n", coeff_closed(&k)?))
        }
        Command::Count { order } => {
            order_guard("count", u64::from(order), u64::from(MAX_COUNT_ORDER))?;
            Ok(format!("{}\n", partition_count(order)))
        }
        Command::Maxparts { order } => Ok(format!("{}\n", max_nonzero_parts(order)?)),
        Command::Eval {
            order,
            f0,
            derivs,
            exact,
        } => {
            order_guard("eval", u64::from(order), u64::from(MAX_EVAL_ORDER))?;
            if exact {
                let f0 = parse_rational(&f0).map_err(Failure::Usage)?;
                let derivs = parse_list(&derivs, parse_rational).map_err(Failure::Usage)?;
                let point = ExactPoint::new(f0, derivs);
                let r = evaluate_derivative_exact(&expand(order)?, &point)?;
                Ok(format!("f0={} sum={}\n", r.f0, r.sum))
            } else {
                let f0 = parse_float(&f0).map_err(Failure::Usage)?;
                let derivs = parse_list(&derivs, parse_float).map_err(Failure::Usage)?;
                let point = FloatPoint::new(f0, derivs);
                Ok(format!(
                    "{}\n",
                    evaluate_derivative(&expand(order)?, &point)?
                ))
            }
        }
        Command::Verify { max_order } => {
            let checks = verify::run_checks(max_order)?;
            let mut report = String::new();
            let mut failed = 0;
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                report.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
                if !c.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(Failure::Verify {
                    report,
                    summary: format!("{failed} of {} checks failed", checks.len()),
                });
            }
            Ok(report)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let line = msg.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Verify { report, summary }) => {
            // the per-check report is still the command's output
            let _ = out.write_all(report.as_bytes());
            let _ = writeln!(err, "error: verification failed, {summary}");
            EXIT_VERIFY
        }
    }
}
