//! Command-line front end for `witt-padic`.
//!
//! Exit status: 0 on success, 1 when the math says no (e.g. a root does not
//! exist), 2 on usage errors and violated preconditions.

pub mod config;
pub mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};
use witt_padic::{
    fermat_quotient, flt_local_witness, general_root, ghost_sequence, parse_witt, pexp, plog,
    polar, ppow, wieferich_search, Error, ExactExponent, GhostLimits, GhostSequence, PAdicInt,
    PAdicNumber, RootReason, WittVector,
};

use crate::config::{load_config, resolve_precision, CONFIG_ENV, PRECISION_ENV};
use crate::render::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "wittp",
    version,
    about = "Exact p-adic arithmetic with Witt vectors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Digits of precision K (default 8; env WITTP_PRECISION; config key `precision`).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputMode>,
    /// Defaults file with `key = value` lines (env WITTP_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Show residues only in least non-negative form.
    #[arg(long, global = true)]
    pub unsigned: bool,
}

#[derive(Debug, Args)]
pub struct ValueArgs {
    #[arg(long = "p")]
    pub p: u64,
    /// An integer, a rational `m/n`, or (for convert) a Witt vector `(x0,x1,...]`.
    #[arg(long, allow_hyphen_values = true)]
    pub value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Witt,
    Residue,
    Digits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbedMethod {
    /// Peel Teichmüller digits off the residue.
    Residue,
    /// Reduce the exact ghost-recursion entries of n·1 mod p.
    Ghost,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between residues, base-p digits and Witt vectors.
    Convert {
        #[command(flatten)]
        v: ValueArgs,
        #[arg(long, value_enum, default_value = "witt")]
        to: ConvertTarget,
        #[arg(long, value_enum, default_value = "residue")]
        method: EmbedMethod,
    },
    /// Teichmüller representative of the value.
    Teichmuller {
        #[command(flatten)]
        v: ValueArgs,
    },
    /// Truncated p-adic logarithm of a value ≡ 1 (mod p).
    Log {
        #[command(flatten)]
        v: ValueArgs,
    },
    /// Truncated p-adic exponential of a value ≡ 0 (mod p).
    Exp {
        #[command(flatten)]
        v: ValueArgs,
    },
    /// x^y = exp(y log x) for an exponent `u` or `u/p^k`.
    Pow {
        #[command(flatten)]
        v: ValueArgs,
        #[arg(long, allow_hyphen_values = true)]
        exponent: String,
    },
    /// Module and argument of the value.
    Polar {
        #[command(flatten)]
        v: ValueArgs,
    },
    /// All m-th roots of the value.
    Root {
        #[command(flatten)]
        v: ValueArgs,
        #[arg(long)]
        degree: u64,
    },
    /// Fermat quotient (x^(p-1) - 1)/p of a unit.
    FermatQuotient {
        #[command(flatten)]
        v: ValueArgs,
    },
    /// Odd primes p ≤ limit with base^(p-1) ≡ 1 (mod p^2).
    Wieferich {
        #[arg(long, default_value_t = 2)]
        base: u64,
        #[arg(long)]
        limit: u64,
    },
    /// A p-adic solution pattern of x^p + y^p = z^p from φ_1(1, y) ≡ 0.
    FltWitness {
        #[arg(long = "p")]
        p: u64,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    precision: u32,
    mode: OutputMode,
    signed: bool,
}

enum Failure {
    Usage(String),
    Domain { reason: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RootCondition(_) | Error::ExactDivisionFailure => Failure::Domain {
                reason: e.to_string(),
            },
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Success {
    json: Value,
    human: String,
}

fn parse_int(s: &str) -> Result<BigInt, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("expected an integer or m/n, got {s:?}")))
}

fn parse_rational(s: &str) -> Result<(BigInt, BigInt), Failure> {
    match s.split_once('/') {
        Some((m, n)) => Ok((parse_int(m)?, parse_int(n)?)),
        None => Ok((parse_int(s)?, BigInt::from(1))),
    }
}

fn parse_number(v: &ValueArgs, k: u32) -> Result<PAdicNumber, Failure> {
    let (m, n) = parse_rational(&v.value)?;
    Ok(PAdicNumber::from_rational(m, n, v.p, k)?)
}

/// The value as a p-adic integer known mod p^K.
fn parse_padic_int(v: &ValueArgs, k: u32) -> Result<PAdicInt, Failure> {
    let (m, n) = parse_rational(&v.value)?;
    let den = PAdicInt::new(v.p, k, n.clone())?;
    let den = den.unit_inverse().map_err(|_| {
        Failure::Usage(format!(
            "denominator {n} must not be divisible by p = {}",
            v.p
        ))
    })?;
    Ok(&PAdicInt::new(v.p, k, m)? * &den)
}

/// Witt digits plus the exact Fermat quotients `q_1(n), q_2(n), ...` they came from.
fn ghost_success(w: &WittVector, ghost: GhostSequence) -> Result<Success, Failure> {
    let quotients = ghost.quotients()?;
    let p = BigInt::from(w.p());
    let mut json = witt_json(w);
    json["quotients"] = quotients.iter().map(big_json).collect();
    let mut human = witt_human(w);
    for (i, q) in quotients.iter().enumerate().skip(1) {
        let r = q.mod_floor(&p);
        human.push_str(&format!("\nq_{i}({}) = {q} ≡ {r} (mod {p})", ghost.n()));
    }
    Ok(Success { json, human })
}

/// `u`, `u/p^k`, `u/p`, or `u/d` with `d` a literal power of p.
fn parse_exponent(s: &str, p: u64) -> Result<ExactExponent, Failure> {
    if let Some((u, den)) = s.split_once('/') {
        if let Ok(mut d) = den.trim().parse::<u64>() {
            let mut k = 0;
            while d > 1 && p > 1 && d % p == 0 {
                d /= p;
                k += 1;
            }
            if d != 1 {
                return Err(Failure::Usage(format!(
                    "exponent denominator {den} is not a power of {p}"
                )));
            }
            return Ok(ExactExponent::new(parse_int(u)?, k));
        }
    }
    Ok(s.parse()?)
}

fn root_reason(reason: RootReason, x: &PAdicNumber, value: &str) -> String {
    let mut text = reason.to_string();
    if reason == RootReason::WittDigitNonzero(1) {
        if let Some(unit) = x.unit() {
            let as_unit = PAdicNumber::Nonzero {
                valuation: 0,
                unit: unit.clone(),
            };
            if let Ok(q) = fermat_quotient(&as_unit) {
                text.push_str(&format!(
                    "; q_1({value}) ≡ {} (mod {})",
                    q.mod_p(),
                    unit.p()
                ));
            }
        }
    }
    text
}

fn run_command(cmd: &Command, ctx: &Ctx) -> Result<Success, Failure> {
    let k = ctx.precision;
    let signed = ctx.signed;
    match cmd {
        Command::Convert { v, to, method } => {
            let w = if v.value.trim_start().starts_with('(') {
                parse_witt(&v.value, v.p)?
            } else if *method == EmbedMethod::Ghost {
                let n = parse_int(&v.value)?;
                WittVector::from_integer(n, v.p, k as usize, GhostLimits::default())?
            } else {
                WittVector::from_padic(&parse_padic_int(v, k)?)
            };
            let residue = w.to_padic();
            Ok(match to {
                ConvertTarget::Witt if *method == EmbedMethod::Ghost && w.is_unit() => {
                    let n = parse_int(&v.value)?;
                    ghost_success(
                        &w,
                        ghost_sequence(n, v.p, w.len() - 1, GhostLimits::default())?,
                    )?
                }
                ConvertTarget::Witt => Success {
                    json: witt_json(&w),
                    human: witt_human(&w),
                },
                ConvertTarget::Residue => Success {
                    json: residue_json(&residue),
                    human: residue_human(&residue, signed),
                },
                ConvertTarget::Digits => {
                    let d = residue.digit_expansion();
                    Success {
                        json: json!({ "p": v.p, "digits": d }),
                        human: format!("{d:?}"),
                    }
                }
            })
        }
        Command::Teichmuller { v } => {
            let t = parse_padic_int(v, k)?.teichmuller();
            Ok(Success {
                json: residue_json(&t),
                human: residue_human(&t, signed),
            })
        }
        Command::Log { v } => {
            let r = plog(&parse_padic_int(v, k)?)?;
            Ok(Success {
                json: residue_json(&r),
                human: residue_human(&r, signed),
            })
        }
        Command::Exp { v } => {
            let r = pexp(&parse_padic_int(v, k)?)?;
            Ok(Success {
                json: residue_json(&r),
                human: residue_human(&r, signed),
            })
        }
        Command::Pow { v, exponent } => {
            let y = parse_exponent(exponent, v.p)?;
            let r = ppow(&parse_number(v, k)?, &y)?;
            Ok(Success {
                json: number_json(&r),
                human: number_human(&r, signed),
            })
        }
        Command::Polar { v } => {
            let f = polar(&parse_number(v, k)?)?;
            Ok(Success {
                json: polar_json(&f),
                human: polar_human(&f, signed),
            })
        }
        Command::Root { v, degree } => {
            let x = parse_number(v, k)?;
            let report = general_root(&x, *degree)?;
            if !report.exists {
                return Err(Failure::Domain {
                    reason: root_reason(report.reason, &x, v.value.trim()),
                });
            }
            let json = json!({
                "degree": report.degree,
                "output_precision": report.output_precision,
                "roots": report.roots.iter().map(number_json).collect::<Vec<_>>(),
            });
            let human = report
                .roots
                .iter()
                .map(|r| number_human(r, signed))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Success { json, human })
        }
        Command::FermatQuotient { v } => {
            let q = fermat_quotient(&parse_number(v, k)?)?;
            Ok(Success {
                json: residue_json(&q),
                human: residue_human(&q, signed),
            })
        }
        Command::Wieferich { base, limit } => {
            let primes = wieferich_search(*base, *limit);
            let human = if primes.is_empty() {
                "none".to_string()
            } else {
                primes
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Success {
                json: json!(primes),
                human,
            })
        }
        Command::FltWitness { p } => match flt_local_witness(*p, k)? {
            None => Ok(Success {
                json: Value::Null,
                human: format!("no witness for p = {p}"),
            }),
            Some(w) => Ok(Success {
                json: json!({
                    "p": w.p,
                    "x": w.x,
                    "y": w.y,
                    "sum": big_json(&w.sum),
                    "root": residue_json(&w.root),
                    "verified_precision": w.precision,
                }),
                human: format!(
                    "{x}^{p} + {y}^{p} = {sum} = r^{p}, r = {root}",
                    x = w.x,
                    y = w.y,
                    sum = w.sum,
                    root = residue_human(&w.root, signed),
                ),
            }),
        },
    }
}

fn usage(mode: OutputMode, precision: u32, msg: String) -> Outcome {
    match mode {
        OutputMode::Json => Outcome {
            code: 2,
            stdout: format!("{}\n", envelope(false, Value::Null, precision, Some(&msg))),
            stderr: String::new(),
        },
        OutputMode::Human => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Resolves defaults and runs one parsed command line.
pub fn dispatch(cli: &Cli, env: &dyn Fn(&str) -> Option<String>) -> Outcome {
    let config_path = cli
        .config
        .clone()
        .or_else(|| env(CONFIG_ENV).map(PathBuf::from));
    let file = match config_path.as_deref().map(load_config).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(msg) => return usage(cli.output.unwrap_or(OutputMode::Human), 0, msg),
    };
    let mode = cli.output.or(file.output).unwrap_or(OutputMode::Human);
    let precision = match resolve_precision(cli.precision, env(PRECISION_ENV).as_deref(), &file) {
        Ok(k) => k,
        Err(msg) => return usage(mode, 0, msg),
    };
    let signed = !cli.unsigned && file.signed.unwrap_or(true);
    let ctx = Ctx {
        precision,
        mode,
        signed,
    };
    render_outcome(run_command(&cli.command, &ctx), &ctx)
}

fn render_outcome(result: Result<Success, Failure>, ctx: &Ctx) -> Outcome {
    match result {
        Ok(s) => Outcome {
            code: 0,
            stdout: match ctx.mode {
                OutputMode::Json => format!("{}\n", envelope(true, s.json, ctx.precision, None)),
                OutputMode::Human => format!("{}\n", s.human),
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => usage(ctx.mode, ctx.precision, msg),
        Err(Failure::Domain { reason }) => match ctx.mode {
            OutputMode::Json => Outcome {
                code: 1,
                stdout: format!(
                    "{}\n",
                    envelope(false, Value::Null, ctx.precision, Some(&reason))
                ),
                stderr: String::new(),
            },
            OutputMode::Human => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("{reason}\n"),
            },
        },
    }
}

pub fn env_lookup(key: &str) -> Option<String> {
    std::env::var(key).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let cli =
            Cli::try_parse_from(std::iter::once("wittp").chain(args.iter().copied())).unwrap();
        dispatch(&cli, &|_| None)
    }

    #[test]
    fn root_of_three() {
        let out = run(&[
            "root",
            "--p",
            "11",
            "--degree",
            "11",
            "--value",
            "3",
            "--precision",
            "3",
        ]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "113 ≡ -8 (mod 11^2)\n");
    }

    #[test]
    fn convert_two_at_three() {
        let out = run(&[
            "convert",
            "--p",
            "3",
            "--value",
            "2",
            "--precision",
            "3",
            "--to",
            "witt",
        ]);
        assert_eq!(out.stdout, "(2,1,0]\n");
        let ghost = run(&[
            "convert",
            "--p",
            "3",
            "--value",
            "2",
            "--precision",
            "3",
            "--method",
            "ghost",
        ]);
        assert_eq!(ghost.stdout.lines().next(), Some("(2,1,0]"));
        assert!(ghost.stdout.contains("q_1(2) = 1 ≡ 1 (mod 3)"));
    }

    #[test]
    fn missing_root_is_a_domain_failure() {
        let out = run(&[
            "root",
            "--p",
            "5",
            "--degree",
            "5",
            "--value",
            "2",
            "--precision",
            "4",
        ]);
        assert_eq!(out.code, 1);
        assert_eq!(out.stderr, "Witt digit 1 nonzero; q_1(2) ≡ 3 (mod 5)\n");
    }

    #[test]
    fn violated_preconditions_are_usage_errors() {
        assert_eq!(run(&["log", "--p", "5", "--value", "2"]).code, 2);
        assert_eq!(run(&["convert", "--p", "9", "--value", "2"]).code, 2);
        assert_eq!(
            run(&["pow", "--p", "5", "--value", "2", "--exponent", "1/3"]).code,
            2
        );
        assert_eq!(
            run(&["root", "--p", "5", "--value", "x", "--degree", "2"]).code,
            2
        );
    }

    #[test]
    fn env_precision_and_config_file() {
        let cli =
            Cli::try_parse_from(["wittp", "teichmuller", "--p", "5", "--value", "2"]).unwrap();
        let out = dispatch(&cli, &|k| (k == PRECISION_ENV).then(|| "2".to_string()));
        assert_eq!(out.stdout, "7 (mod 5^2)\n");

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("wittp.conf");
        std::fs::write(&path, "precision = 3\noutput = json\n").unwrap();
        let cli = Cli::try_parse_from([
            "wittp",
            "--config",
            path.to_str().unwrap(),
            "log",
            "--p",
            "5",
            "--value",
            "6",
        ])
        .unwrap();
        let out = dispatch(&cli, &|_| None);
        assert_eq!(
            out.stdout,
            "{\"ok\":true,\"result\":{\"p\":5,\"precision\":3,\"residue\":55},\"precision\":3}\n"
        );
    }
}
