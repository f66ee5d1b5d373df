mod input;
mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use twobridge::contfrac::even_cf;
use twobridge::diagram::mu;
use twobridge::goeritz::{closed_form_diagonal, congruence_diagonalize, goeritz_matrix, transition_matrix};
use twobridge::signature::{
    goeritz_signature, oracle_any, signature_from_cf, signature_from_pq, signature_verified, slice_obstruction,
    sum_signature, validate_fraction,
};
use twobridge::{Error, Int, SignatureReport};

use crate::input::BatchItem;
use crate::render::*;

#[derive(Parser)]
#[command(name = "twobridge", version, about = "Exact signatures of two-bridge knots")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, env = "TWOBRIDGE_FORMAT", default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CfArg {
    /// Continued fraction coefficients, e.g. 2,-3,3
    #[arg(long, allow_hyphen_values = true)]
    cf: String,
}

#[derive(Subcommand)]
enum Command {
    /// Signature of K(p/q) or of the knot of a continued fraction
    Sig {
        /// Fraction p/q
        #[arg(allow_hyphen_values = true, required_unless_present = "cf", conflicts_with = "cf")]
        fraction: Option<String>,
        /// Continued fraction coefficients instead of a fraction
        #[arg(long, allow_hyphen_values = true)]
        cf: Option<String>,
        /// Run every method and fail on any disagreement
        #[arg(long)]
        verify: bool,
    },
    /// Goeritz matrix, closed-form diagonal, transition matrix and determinant
    Goeritz(CfArg),
    /// Even continued fraction expansion with its division trace
    Evencf {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Per-region breakdown of the correction term
    Mu(CfArg),
    /// Remainder-counting signature
    Oracle {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Signature of a connected sum and the slice obstruction it gives
    Sum {
        /// Spec file ("-" for stdin): lines "mult x p/q" or a JSON array of {p, q, mult}
        file: String,
    },
    /// Signatures for a file of "p/q" or "cf: c1,c2,..." lines, in input order
    Batch {
        /// Input file ("-" for stdin)
        file: String,
    },
}

enum Failure {
    Input(String),
    CrossCheck(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck(_) => Failure::CrossCheck(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn emit(
    format: Format,
    text: impl FnOnce() -> String,
    json: impl FnOnce() -> Value,
    csv: impl FnOnce() -> String,
) -> String {
    match format {
        Format::Text => text(),
        Format::Json => pretty(&json()),
        Format::Csv => csv(),
    }
}

fn signature_output(format: Format, r: &SignatureReport) -> String {
    emit(format, || signature_text(r), || signature_json(r), || csv_table(&SIGNATURE_COLUMNS, &[signature_row(r)]))
}

fn batch_report(item: &BatchItem) -> twobridge::Result<SignatureReport> {
    match item {
        BatchItem::Fraction(p, q) => signature_from_pq(p, q),
        BatchItem::Cf(cf) => signature_from_cf(cf),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Sig { fraction, cf, verify } => {
            let report = match (fraction, cf) {
                (Some(f), None) => {
                    let (p, q) = input::fraction(&f)?;
                    if verify {
                        signature_verified(&p, &q)?
                    } else {
                        signature_from_pq(&p, &q)?
                    }
                }
                (None, Some(list)) => {
                    let cf = input::coefficients(&list)?;
                    let report = signature_from_cf(&cf)?;
                    if verify {
                        let (p, q) = report_fraction(&report);
                        if q != Int::from(0) {
                            let other = signature_verified(&p, &q)?;
                            if other.sigma != report.sigma {
                                return Err(Failure::CrossCheck(format!(
                                    "{cf}: closed-form signature {} but {p}/{q} gives {}",
                                    report.sigma, other.sigma
                                )));
                            }
                        }
                    }
                    report
                }
                _ => unreachable!("clap enforces exactly one input"),
            };
            Ok(signature_output(format, &report))
        }
        Command::Goeritz(CfArg { cf }) => {
            let cf = input::coefficients(&cf)?.normalize_odd_length();
            let g = goeritz_matrix(&cf)?;
            let (sigma_g, _) = goeritz_signature(&cf)?;
            let closed = match (closed_form_diagonal(&cf), transition_matrix(&cf)) {
                (Ok(d), Ok(p)) => Some((d, p)),
                (Err(Error::DegenerateLambda { .. }), _) | (_, Err(Error::DegenerateLambda { .. })) => None,
                (Err(e), _) | (_, Err(e)) => return Err(e.into()),
            };
            let congruence = congruence_diagonalize(&g.to_rational())?;
            let view = GoeritzView {
                cf: &cf,
                goeritz: &g,
                sigma_g: &sigma_g,
                closed: closed.as_ref().map(|(d, p)| (d, p)),
                congruence: &congruence,
            };
            Ok(emit(
                format,
                || goeritz_text(&view),
                || goeritz_json(&view),
                || {
                    let (header, rows) = goeritz_rows(&view);
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    csv_table(&header, &rows)
                },
            ))
        }
        Command::Evencf { fraction } => {
            let (p, q) = input::fraction(&fraction)?;
            let (p, q) = validate_fraction(&p, &q)?;
            let (cf, trace) = even_cf(&p, &q)?;
            Ok(emit(
                format,
                || even_cf_text(&p, &q, &cf, &trace),
                || even_cf_json(&cf, &trace),
                || csv_table(&TRACE_COLUMNS, &trace_rows(&trace)),
            ))
        }
        Command::Mu(CfArg { cf }) => {
            let cf = input::coefficients(&cf)?.normalize_odd_length();
            let m = mu(&cf)?;
            Ok(emit(format, || mu_text(&cf, &m), || mu_json(&cf, &m), || csv_table(&MU_COLUMNS, &mu_rows(&m))))
        }
        Command::Oracle { fraction } => {
            let (p, q) = input::fraction(&fraction)?;
            let sigma = oracle_any(&p, &q)?;
            let (p, q) = validate_fraction(&p, &q)?;
            Ok(emit(
                format,
                || format!("K({p}/{q})\n  signature    {sigma}\n  method       oracle\n"),
                || serde_json::json!({"p": p.to_string(), "q": q.to_string(), "sigma": sigma.to_string(), "method": "oracle"}),
                || csv_table(&["p", "q", "sigma"], &[vec![p.to_string(), q.to_string(), sigma.to_string()]]),
            ))
        }
        Command::Sum { file } => {
            let spec = input::sum_spec(&read_source(&file)?)?;
            let (each, total) = sum_signature(&spec)?;
            let verdict = slice_obstruction(&spec)?;
            let view = SumView { spec: &spec, each: &each, total: &total, verdict: &verdict };
            Ok(emit(format, || sum_text(&view), || sum_json(&view), || csv_table(&SUM_COLUMNS, &sum_rows(&view))))
        }
        Command::Batch { file } => {
            let items = input::batch(&read_source(&file)?)?;
            // par_iter + collect keeps input order
            let results: Vec<Result<SignatureReport, (usize, Error)>> =
                items.par_iter().map(|(line, item)| batch_report(item).map_err(|e| (*line, e))).collect();
            let mut reports = Vec::with_capacity(results.len());
            for r in results {
                match r {
                    Ok(rep) => reports.push(rep),
                    Err((line, Error::CrossCheck(m))) => return Err(Failure::CrossCheck(format!("line {line}: {m}"))),
                    Err((line, e)) => return Err(Failure::Input(format!("line {line}: {e}"))),
                }
            }
            Ok(match format {
                Format::Json => pretty(&Value::Array(reports.iter().map(signature_json).collect())),
                Format::Text | Format::Csv => {
                    csv_table(&SIGNATURE_COLUMNS, &reports.iter().map(signature_row).collect::<Vec<_>>())
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::CrossCheck(msg)) => {
            eprintln!("cross-check failure: {msg}");
            ExitCode::from(3)
        }
    }
}
