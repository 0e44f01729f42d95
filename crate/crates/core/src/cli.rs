//! The `qcong` command line. Exit codes: 0 when every check passes, 1 when
//! at least one fails, 2 on usage, parse or evaluation errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::catalogue::{run_suite, SuiteConfig};
use crate::engine::{
    check_progression, check_relation, scan_progressions, series_c, series_ck, verify_congruent,
    verify_identity, ClaimReport, ProgressionClaim, RelationClaim,
};
use crate::expr::{eval, parse};
use crate::oracle::{counts, KBound};
use crate::ring::Ring;
use crate::series::Series;

#[derive(Parser, Debug)]
#[command(
    name = "qcong",
    version,
    about = "Truncated q-series engine and congruence checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Exact,
    Mod64,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Exact => Ring::Exact,
            RingArg::Mod64 => Ring::MOD64,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients of an expression.
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "exact")]
        ring: RingArg,
        /// Emit a JSON dump instead of `n<TAB>coefficient` lines.
        #[arg(long)]
        json: bool,
    },
    /// Compare two expressions coefficientwise, exactly or modulo M.
    Verify {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        #[arg(long)]
        order: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value = "exact")]
        ring: RingArg,
    },
    /// Check c(A n + B) ≡ 0 (mod M) for 0 <= n <= NMAX.
    Check {
        #[arg(long, value_parser = parse_series_name)]
        series: SeriesName,
        #[arg(long, value_parser = parse_pair)]
        progression: (u64, u64),
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Check c(A1 n + B1) ≡ ±c(A2 n + B2) (mod M) for 0 <= n <= NMAX.
    Relation {
        #[arg(long, value_parser = parse_series_name)]
        series: SeriesName,
        #[arg(long, value_parser = parse_pair)]
        lhs: (u64, u64),
        #[arg(long, value_parser = parse_pair)]
        rhs: (u64, u64),
        #[arg(long, allow_hyphen_values = true, value_parser = ["+", "-"])]
        sign: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Run the whole claim catalogue.
    Suite {
        #[arg(long, default_value_t = SuiteConfig::default().order_identity)]
        order_identity: usize,
        #[arg(long, default_value_t = SuiteConfig::default().order_congruence)]
        order_congruence: usize,
        #[arg(long, default_value_t = SuiteConfig::default().order_scan)]
        order_scan: usize,
        #[arg(long, default_value_t = SuiteConfig::default().k_max)]
        kmax: u32,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Count the partitions by brute-force enumeration.
    Oracle {
        #[arg(long, value_parser = parse_k_bound)]
        k: KBound,
        #[arg(long)]
        nmax: u32,
    },
    /// Search for vanishing progressions (empirical, unproven).
    Scan {
        #[arg(long)]
        amax: u64,
        #[arg(long, value_delimiter = ',', default_value = "4,8")]
        mods: Vec<u64>,
        #[arg(long)]
        nmax: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SeriesName {
    C,
    Ck(usize),
}

fn parse_series_name(s: &str) -> Result<SeriesName, String> {
    if s == "C" {
        return Ok(SeriesName::C);
    }
    let k = s
        .strip_prefix("Ck:")
        .ok_or_else(|| format!("expected C or Ck:K, got {s:?}"))?;
    match k.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(SeriesName::Ck(k)),
        _ => Err(format!("k must be a positive integer, got {k:?}")),
    }
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_k_bound(s: &str) -> Result<KBound, String> {
    if s == "limit" {
        return Ok(KBound::Limit);
    }
    match s.parse::<u32>() {
        Ok(k) if k >= 1 => Ok(KBound::Finite(k)),
        _ => Err(format!("expected a positive integer or 'limit', got {s:?}")),
    }
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<bool, UsageError>;

fn build_series(name: SeriesName, modulus: u64, order: usize) -> Result<Series, UsageError> {
    // residues modulo a divisor of 2^64 only need the wraparound ring
    let ring = if Ring::MOD64.supports_modulus(&BigInt::from(modulus)) {
        Ring::MOD64
    } else {
        Ring::Exact
    };
    Ok(match name {
        SeriesName::C => series_c(ring, order)?,
        SeriesName::Ck(k) => series_ck(ring, k, order)?,
    })
}

fn required_order(pairs: &[(u64, u64)], n_max: u64) -> Result<usize, UsageError> {
    let top = pairs
        .iter()
        .map(|&(a, b)| a.checked_mul(n_max).and_then(|x| x.checked_add(b)))
        .try_fold(0u64, |acc, x| x.map(|x| acc.max(x)))
        .ok_or_else(|| UsageError("progression index overflows".into()))?;
    usize::try_from(top + 1).map_err(|_| UsageError("progression index overflows".into()))
}

fn report_line(out: &mut dyn Write, report: &ClaimReport) -> Outcome {
    writeln!(out, "{report}")?;
    Ok(report.passed())
}

fn run_command(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Expand {
            expr,
            order,
            ring,
            json,
        } => {
            let series = eval(&parse(&expr)?, order, ring.into())?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&series.to_dump())?)?;
            } else {
                series.write_text(&mut *out)?;
            }
            Ok(true)
        }
        Command::Verify {
            lhs,
            rhs,
            order,
            modulus,
            ring,
        } => {
            let ring = Ring::from(ring);
            if ring != Ring::Exact && modulus.is_none() {
                return Err(UsageError(
                    "exact equality needs --ring exact; pass --mod M to compare residues".into(),
                ));
            }
            let lhs = eval(&parse(&lhs)?, order, ring)?;
            let rhs = eval(&parse(&rhs)?, order, ring)?;
            let report = match modulus {
                None => verify_identity(&lhs, &rhs, order)?,
                Some(m) => verify_congruent(&lhs, &rhs, m, order)?,
            };
            report_line(out, &report.labeled("verify", "LHS = RHS"))
        }
        Command::Check {
            series,
            progression: (a, b),
            modulus,
            nmax,
        } => {
            let order = required_order(&[(a, b)], nmax)?;
            let s = build_series(series, modulus, order)?;
            let claim = ProgressionClaim {
                a,
                b,
                modulus,
                n_max: nmax,
            };
            let report = check_progression(&s, &claim)?;
            report_line(
                out,
                &report.labeled("check", format!("c({a}n+{b}) mod {modulus}")),
            )
        }
        Command::Relation {
            series,
            lhs,
            rhs,
            sign,
            modulus,
            nmax,
        } => {
            let order = required_order(&[lhs, rhs], nmax)?;
            let s = build_series(series, modulus, order)?;
            let claim = RelationClaim {
                lhs,
                sign: if sign == "-" { -1 } else { 1 },
                rhs,
                modulus,
                n_max: nmax,
            };
            let report = check_relation(&s, &claim)?;
            let label = format!(
                "c({}n+{}) = {sign}c({}n+{}) mod {modulus}",
                lhs.0, lhs.1, rhs.0, rhs.1
            );
            report_line(out, &report.labeled("relation", label))
        }
        Command::Suite {
            order_identity,
            order_congruence,
            order_scan,
            kmax,
            json,
        } => {
            let config = SuiteConfig {
                order_identity,
                order_congruence,
                order_scan,
                k_max: kmax,
                ..SuiteConfig::default()
            };
            let report = run_suite(&config)?;
            for claim in &report.claims {
                writeln!(out, "{claim}")?;
            }
            let passed = report.claims.iter().filter(|c| c.passed()).count();
            writeln!(out, "{passed}/{} claims pass", report.claims.len())?;
            if let Some(path) = json {
                fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            }
            Ok(report.all_pass())
        }
        Command::Oracle { k, nmax } => {
            for row in counts(k, nmax) {
                writeln!(out, "{}\t{}", row.n, row.count)?;
            }
            Ok(true)
        }
        Command::Scan { amax, mods, nmax } => {
            let order = required_order(&[(amax, amax.saturating_sub(1))], nmax)?;
            let s = series_c(Ring::MOD64, order)?;
            writeln!(
                out,
                "# empirical, unproven: c(A n + B) ≡ 0 (mod M) for 0 <= n <= {nmax}"
            )?;
            for claim in scan_progressions(&s, amax, &mods, nmax)? {
                writeln!(out, "{}\t{}\t{}", claim.a, claim.b, claim.modulus)?;
            }
            Ok(true)
        }
    }
}

/// Run with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match run_command(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(UsageError(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    ExitCode::from(run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qcong").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn expand_q() {
        let (code, out, _) = call(&["expand", "q", "--order", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0\t0\n1\t1\n");
    }

    #[test]
    fn argument_parsers() {
        assert_eq!(parse_pair("8, 6"), Ok((8, 6)));
        assert!(parse_pair("8").is_err());
        assert_eq!(parse_series_name("Ck:3"), Ok(SeriesName::Ck(3)));
        assert!(parse_series_name("Ck:0").is_err());
        assert_eq!(parse_k_bound("limit"), Ok(KBound::Limit));
        assert!(parse_k_bound("0").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        let (code, _, err) = call(&["expand", "1.5", "--order", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("decimal"));
        let (code, _, _) = call(&["verify", "q", "q", "--order", "3", "--ring", "mod64"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn relation_accepts_minus_sign() {
        let (code, out, _) = call(&[
            "relation", "--series", "C", "--lhs", "8,7", "--rhs", "2,2", "--sign", "-", "--mod",
            "4", "--nmax", "50",
        ]);
        assert_eq!(code, 0, "{out}");
    }
}
