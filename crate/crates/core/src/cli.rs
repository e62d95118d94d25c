//! The `gencong` command-line front end.
//!
//! ```text
//! gencong <command> [operands] [--json] [--trace] [--a LO..HI] [--m LO..HI] [--cap K]
//! ```
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error (zero
//! modulus, non-positive totient argument), 3 verification failure.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::factorize;
use crate::error::Error as DomainError;
use crate::reduction::{build_chain, pow_with_chain, verify_theorem, ReductionChain};

/// Default bound on the number of `(a, m)` pairs `verify` will check.
pub const DEFAULT_VERIFY_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Usage = 1,
    Domain = 2,
    VerificationFailed = 3,
}

/// Failures surfaced by the front end; each maps to an exit [`Status`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("selftest failed: {0}")]
    SelftestFailed(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Usage(_) | CliError::Io(_) => Status::Usage,
            CliError::Domain(_) => Status::Domain,
            CliError::SelftestFailed(_) => Status::VerificationFailed,
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        match e {
            DomainError::ZeroModulus => CliError::Domain(
                "modulus must be nonzero: the congruence is defined for m ≠ 0".into(),
            ),
            other => CliError::Domain(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "gencong",
    version,
    about = "Reduction chains and exponent reduction for a^(φ(m_s)+s) ≡ a^s (mod m)"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print the reduction chain and congruence alongside the result.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the reduction chain of a modulo m.
    Reduce {
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        m: String,
    },
    /// Compute a^N mod m. With no operands, reads "a N m" lines from stdin
    /// and writes one JSON object per line.
    Pow {
        #[arg(allow_negative_numbers = true, value_names = ["A", "N", "M"])]
        operands: Vec<String>,
    },
    /// Euler's φ(n).
    Totient {
        #[arg(allow_negative_numbers = true)]
        n: String,
    },
    /// Check the congruence over every (a, m) in the given ranges (m = 0 skipped).
    Verify {
        /// Inclusive range LO..HI for a.
        #[arg(long = "a", allow_hyphen_values = true, value_name = "LO..HI")]
        a_range: String,
        /// Inclusive range LO..HI for m.
        #[arg(long = "m", allow_hyphen_values = true, value_name = "LO..HI")]
        m_range: String,
        /// Maximum number of pairs to check.
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        cap: u64,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    Status::Success as i32
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    Status::Usage as i32
                }
            };
        }
    };

    match dispatch(&args, stdin, out, err) {
        Ok(status) => status as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status() as i32
        }
    }
}

fn dispatch(
    args: &Args,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<Status> {
    match &args.command {
        Command::Reduce { a, m } => {
            let a = parse_int(a)?;
            let m = parse_int(m)?;
            let chain = build_chain(&a, &m)?;
            if args.json {
                writeln!(out, "{}", to_json(&ChainJson::from_chain(&chain)))?;
            } else {
                writeln!(out, "{chain}")?;
            }
            Ok(Status::Success)
        }
        Command::Pow { operands } => match operands.as_slice() {
            [] => pow_batch(stdin, out, err),
            [a, n, m] => {
                let result = PowResult::parse_and_compute(a, n, m)?;
                if args.json {
                    writeln!(out, "{}", to_json(&result.json()))?;
                } else {
                    write_pow_text(out, &result, args.trace)?;
                }
                Ok(Status::Success)
            }
            other => Err(CliError::Usage(format!(
                "pow takes 3 operands (a N m), got {}",
                other.len()
            ))),
        },
        Command::Totient { n } => {
            let n = parse_int(n)?;
            if !n.is_positive() {
                return Err(CliError::Domain(format!("totient requires n ≥ 1, got {n}")));
            }
            let f = factorize(n.magnitude())?;
            let phi = f.totient();
            if args.json {
                let json = TotientJson {
                    n: n.to_string(),
                    phi: phi.to_string(),
                    factors: f
                        .factors()
                        .iter()
                        .map(|(p, e)| FactorJson {
                            prime: p.to_string(),
                            exponent: *e,
                        })
                        .collect(),
                };
                writeln!(out, "{}", to_json(&json))?;
            } else {
                if args.trace {
                    writeln!(out, "{n} = {f}")?;
                }
                writeln!(out, "{phi}")?;
            }
            Ok(Status::Success)
        }
        Command::Verify {
            a_range,
            m_range,
            cap,
        } => {
            let a_range = parse_range(a_range, "--a")?;
            let m_range = parse_range(m_range, "--m")?;
            let summary = run_verify(a_range, m_range, *cap)?;
            if args.json {
                writeln!(out, "{}", to_json(&summary.json()))?;
            } else {
                writeln!(
                    out,
                    "{} checked, {} failures",
                    summary.checked, summary.failures
                )?;
                if let Some(report) = &summary.first_failure_report {
                    writeln!(out, "first failure:\n{report}")?;
                }
            }
            if summary.failures > 0 {
                Ok(Status::VerificationFailed)
            } else {
                Ok(Status::Success)
            }
        }
        Command::Selftest => {
            let checks = selftest()?;
            writeln!(out, "selftest: {checks} checks passed")?;
            Ok(Status::Success)
        }
    }
}

/// Parses a decimal integer with an optional leading minus sign
/// (ASCII `-` or U+2212).
pub fn parse_int(text: &str) -> CliResult<BigInt> {
    let trimmed = text.trim();
    let (negative, digits) = match trimmed
        .strip_prefix('-')
        .or_else(|| trimmed.strip_prefix('\u{2212}'))
    {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Usage(format!("not a decimal integer: {text:?}")));
    }
    let magnitude = BigUint::parse_bytes(digits.as_bytes(), 10)
        .ok_or_else(|| CliError::Usage(format!("not a decimal integer: {text:?}")))?;
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    Ok(BigInt::from_biguint(sign, magnitude))
}

fn parse_range(text: &str, flag: &str) -> CliResult<RangeInclusive<i64>> {
    let bad = || CliError::Usage(format!("{flag} expects LO..HI with LO ≤ HI, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = parse_int(lo)
        .ok()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(bad)?;
    let hi = parse_int(hi)
        .ok()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(bad)?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain structs serialize")
}

/// A resolved `a^N mod m` query.
#[derive(Debug, Clone)]
pub struct PowResult {
    pub a: BigInt,
    pub n: BigUint,
    pub m: BigInt,
    pub chain: ReductionChain,
    pub reduced_exponent: BigUint,
    /// `a^N mod |m|`, in `[0, |m|)`.
    pub residue: BigUint,
}

impl PowResult {
    pub fn compute(a: &BigInt, n: &BigUint, m: &BigInt) -> crate::Result<Self> {
        let chain = build_chain(a, m)?;
        let reduced_exponent = chain.reduce_exponent(n);
        let residue = pow_with_chain(&chain, n);
        Ok(PowResult {
            a: a.clone(),
            n: n.clone(),
            m: m.clone(),
            chain,
            reduced_exponent,
            residue,
        })
    }

    fn parse_and_compute(a: &str, n: &str, m: &str) -> CliResult<Self> {
        let a = parse_int(a)?;
        let n = parse_int(n)?;
        let m = parse_int(m)?;
        if n.is_negative() {
            return Err(CliError::Usage(format!(
                "exponent must be non-negative, got {n}"
            )));
        }
        Ok(PowResult::compute(&a, n.magnitude(), &m)?)
    }

    fn json(&self) -> ChainJson {
        let mut json = ChainJson::from_chain(&self.chain);
        json.reduced_exponent = Some(self.reduced_exponent.to_string());
        json.residue = Some(self.residue.to_string());
        json
    }
}

fn write_pow_text(out: &mut dyn Write, r: &PowResult, trace: bool) -> CliResult<()> {
    let c = &r.chain;
    if trace {
        writeln!(out, "{c}")?;
        writeln!(
            out,
            "{a}^{n} ≡ {a}^{e} (mod {m})",
            a = r.a,
            n = r.n,
            e = r.reduced_exponent,
            m = c.modulus()
        )?;
    } else {
        writeln!(
            out,
            "s={} m_s={} phi(m_s)={}",
            c.depth(),
            c.reduced_modulus(),
            c.reduced_totient()
        )?;
    }
    writeln!(
        out,
        "reduced_exponent={} residue={}",
        r.reduced_exponent, r.residue
    )?;
    Ok(())
}

fn pow_batch(
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<Status> {
    let mut status = Status::Success;
    for (lineno, line) in stdin.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let result = match fields.as_slice() {
            [a, n, m] => PowResult::parse_and_compute(a, n, m),
            _ => Err(CliError::Usage(format!(
                "expected 3 fields (a N m), got {}",
                fields.len()
            ))),
        };
        match result {
            Ok(r) => writeln!(out, "{}", to_json(&r.json()))?,
            Err(e) => {
                writeln!(err, "line {}: {e}", lineno + 1)?;
                if (e.status() as i32) > (status as i32) {
                    status = e.status();
                }
            }
        }
    }
    Ok(status)
}

#[derive(Debug, Serialize)]
struct StepJson {
    i: usize,
    d: String,
    m_rem: String,
}

#[derive(Debug, Serialize)]
struct ChainJson {
    a: String,
    m: String,
    steps: Vec<StepJson>,
    s: usize,
    m_s: String,
    phi_m_s: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced_exponent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residue: Option<String>,
}

impl ChainJson {
    fn from_chain(chain: &ReductionChain) -> Self {
        ChainJson {
            a: chain.a_input().to_string(),
            m: chain.m_input().to_string(),
            steps: chain
                .steps()
                .iter()
                .map(|s| StepJson {
                    i: s.index,
                    d: s.d.to_string(),
                    m_rem: s.m_rem.to_string(),
                })
                .collect(),
            s: chain.depth(),
            m_s: chain.reduced_modulus().to_string(),
            phi_m_s: chain.reduced_totient().to_string(),
            reduced_exponent: None,
            residue: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct FactorJson {
    prime: String,
    exponent: u32,
}

#[derive(Debug, Serialize)]
struct TotientJson {
    n: String,
    phi: String,
    factors: Vec<FactorJson>,
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    checked: u64,
    failures: u64,
    first_failure: Option<FailureJson>,
}

#[derive(Debug, Serialize)]
struct FailureJson {
    a: String,
    m: String,
    report: String,
}

/// Aggregated result of a `verify` sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub checked: u64,
    pub failures: u64,
    /// Lexicographically smallest failing `(a, m)`.
    pub first_failure: Option<(i64, i64)>,
    pub first_failure_report: Option<String>,
}

impl VerifySummary {
    fn json(&self) -> VerifyJson {
        VerifyJson {
            checked: self.checked,
            failures: self.failures,
            first_failure: self.first_failure.map(|(a, m)| FailureJson {
                a: a.to_string(),
                m: m.to_string(),
                report: self.first_failure_report.clone().unwrap_or_default(),
            }),
        }
    }
}

fn run_verify(
    a_range: RangeInclusive<i64>,
    m_range: RangeInclusive<i64>,
    cap: u64,
) -> CliResult<VerifySummary> {
    let a_count = (*a_range.end() as i128 - *a_range.start() as i128 + 1) as u128;
    let zero_in_m = m_range.contains(&0) as i128;
    let m_count = (*m_range.end() as i128 - *m_range.start() as i128 + 1 - zero_in_m) as u128;
    if m_count == 0 {
        return Err(CliError::Usage(
            "--m range contains no nonzero modulus".into(),
        ));
    }
    let total = a_count * m_count;
    if total > cap as u128 {
        return Err(CliError::Usage(format!(
            "{total} pairs exceeds the cap of {cap}; raise it with --cap"
        )));
    }
    Ok(verify_pairs(a_range, m_range))
}

/// Checks the congruence for every `(a, m)` in the cross product, skipping
/// `m = 0`. Pairs are evaluated in parallel; the summary does not depend on
/// scheduling.
pub fn verify_pairs(a_range: RangeInclusive<i64>, m_range: RangeInclusive<i64>) -> VerifySummary {
    let (checked, failures, first) = m_range
        .into_par_iter()
        .filter(|&m| m != 0)
        .flat_map_iter(|m| a_range.clone().map(move |a| (a, m)))
        .map(|(a, m)| {
            let check = verify_theorem(&BigInt::from(a), &BigInt::from(m)).expect("m is nonzero");
            let failed = !check.holds();
            (1u64, failed as u64, failed.then_some((a, m)))
        })
        .reduce(
            || (0, 0, None),
            |x, y| {
                let first = match (x.2, y.2) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    (p, q) => p.or(q),
                };
                (x.0 + y.0, x.1 + y.1, first)
            },
        );
    let first_failure_report = first.map(|(a, m)| {
        verify_theorem(&BigInt::from(a), &BigInt::from(m))
            .expect("m is nonzero")
            .to_string()
    });
    VerifySummary {
        checked,
        failures,
        first_failure: first,
        first_failure_report,
    }
}

fn selftest() -> CliResult<usize> {
    let mut checks = 0;
    let mut expect = |ok: bool, what: &'static str| -> CliResult<()> {
        checks += 1;
        ok.then_some(()).ok_or(CliError::SelftestFailed(what))
    };

    let chain = build_chain(&BigInt::from(6), &BigInt::from(105765))?;
    let d0 = &chain.steps()[0];
    expect(d0.d == BigUint::from(3u8), "d_0 = 3")?;
    expect(d0.m_rem == BigUint::from(35255u32), "m_0 = 35255")?;
    expect(chain.depth() == 1, "s = 1")?;
    expect(
        chain.reduced_totient() == &BigUint::from(25600u32),
        "φ(35255) = 25600",
    )?;
    let r = PowResult::compute(
        &BigInt::from(6),
        &BigUint::from(25604u32),
        &BigInt::from(105765),
    )?;
    expect(r.reduced_exponent == BigUint::from(4u8), "6^25604 ≡ 6^4")?;
    expect(r.residue == BigUint::from(1296u32), "residue 1296")?;

    let sweep = verify_pairs(-40..=40, -40..=40);
    expect(sweep.failures == 0, "sweep over |a|, |m| ≤ 40")?;
    Ok(checks + sweep.checked as usize)
}
