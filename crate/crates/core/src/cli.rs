//! Command-line surface. `run` is the whole program; the binary only wires
//! it to the process streams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 solver non-convergence.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::coeffring::{c_n_numeric, c_n_symbolic_all, HbConstants};
use crate::error::Error;
use crate::legendre::q_poly;
use crate::recurrence::UtildeSeq;
use crate::spectral::{
    convergence_table, decay_diagnostic, integer_certificate, lambda_branch, lambda_fixed_point,
    BRANCH_NOTE,
};
use crate::verify::{run_suite, Suite, VerifyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

const FIXED_POINT_MAX_ITER: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "continuant", version, about = "Exact recurrence, determinant and truncation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// JSON output (default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV output.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit ũ_0..ũ_N.
    GenU {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Emit the scaled Legendre polynomial Q_N.
    QPoly {
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2^-64")]
        tol: String,
        #[command(flatten)]
        format: Format,
    },
    /// Locate the branch eigenvalue λ(a) at a truncation depth.
    Solve {
        #[arg(long)]
        a2: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "2^-64")]
        tol: String,
        #[arg(long, default_value_t = 1)]
        root_index: usize,
        /// Solve every depth 1..=N and report successive differences.
        #[arg(long)]
        table: bool,
    },
    /// Tabulate |û_n| at the depth-N branch eigenvalue.
    Decay {
        #[arg(long)]
        a2: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "2^-64")]
        tol: String,
        #[command(flatten)]
        format: Format,
    },
    /// Integer certificate (sq)^n û_n at a rational point.
    Certify {
        #[arg(long)]
        a2: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Taylor coefficients c_0..c_N in ℤ[π², C, L].
    CoeffRing {
        #[arg(long)]
        n: usize,
        /// Also evaluate numerically at the supplied constants.
        #[arg(long, requires_all = ["c", "l", "provenance"])]
        eval: bool,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long, default_value_t = 128)]
        prec: u32,
        /// Exact value to use for π² instead of computing it.
        #[arg(long)]
        pi2: Option<String>,
        /// Where the constants came from; echoed into the output.
        #[arg(long)]
        provenance: Option<String>,
        #[command(flatten)]
        format: Format,
    },
}

struct Outcome {
    code: i32,
    body: String,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { code: EXIT_OK, body }
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    let result = dispatch(cli.command, err);
    let code = match result {
        Ok(o) => {
            let _ = out.write_all(o.body.as_bytes());
            if !o.body.ends_with('\n') {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    };
    let _ = writeln!(err, "wall time: {:.3} s", started.elapsed().as_secs_f64());
    code
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::InvalidConstants(_) => EXIT_USAGE,
        Error::NoSignChange { .. }
        | Error::TangencyCandidate { .. }
        | Error::NotConverged { .. }
        | Error::DegenerateTruncation { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_FAILED,
    }
}

fn dispatch(cmd: Command, err: &mut dyn Write) -> Result<Outcome, Error> {
    match cmd {
        Command::GenU { n, format } => gen_u(n, format),
        Command::QPoly { n } => Ok(Outcome::ok(to_json(&q_poly(n))?)),
        Command::Verify {
            suite,
            n_max,
            samples,
            seed,
            tol,
            format,
        } => {
            let suite: Suite = suite.parse()?;
            let tol = parse_rational(&tol)?;
            let params = VerifyParams {
                n_max,
                samples,
                seed,
                tol: format_rational(&tol),
            };
            let report = run_suite(suite, params)?;
            let failed = report.totals.failed;
            let _ = writeln!(
                err,
                "{suite}: {} checks, {} passed, {failed} failed",
                report.totals.checks, report.totals.passed
            );
            let body = if format.csv {
                csv_rows(
                    &["id", "pass", "witness"],
                    report
                        .checks
                        .iter()
                        .map(|c| vec![c.id.clone(), c.pass.to_string(), c.witness.clone().unwrap_or_default()]),
                )?
            } else {
                to_json(&report)?
            };
            Ok(Outcome {
                code: if report.pass() { EXIT_OK } else { EXIT_FAILED },
                body,
            })
        }
        Command::Solve {
            a2,
            depth,
            tol,
            root_index,
            table,
        } => solve(&parse_rational(&a2)?, depth, &parse_rational(&tol)?, root_index, table),
        Command::Decay {
            a2,
            depth,
            n_max,
            tol,
            format,
        } => {
            let a2 = parse_rational(&a2)?;
            let root = lambda_branch(&a2, depth, &parse_rational(&tol)?, 1)?;
            let table = decay_diagnostic(&a2, &root.lambda, n_max);
            let body = if format.csv {
                csv_rows(
                    &["n", "ln_abs_u_hat", "s_n"],
                    table.rows.iter().map(|r| {
                        vec![
                            r.n.to_string(),
                            r.ln_abs_u_hat.map(|v| format!("{v:.12e}")).unwrap_or_default(),
                            format!("{:.12e}", r.s_n),
                        ]
                    }),
                )?
            } else {
                let ranges: Vec<[usize; 2]> = table.decreasing_ranges().into_iter().map(|(a, b)| [a, b]).collect();
                to_json(&json!({
                    "depth": depth,
                    "branch": root,
                    "table": table,
                    "decreasing_ranges": ranges,
                    "note": BRANCH_NOTE,
                }))?
            };
            Ok(Outcome::ok(body))
        }
        Command::Certify {
            a2,
            lambda,
            n_max,
            format,
        } => {
            let cert = integer_certificate(&parse_rational(&a2)?, &parse_rational(&lambda)?, n_max)?;
            let body = if format.csv {
                csv_rows(
                    &["n", "value"],
                    cert.entries.iter().enumerate().map(|(n, v)| vec![n.to_string(), v.to_string()]),
                )?
            } else {
                to_json(&cert)?
            };
            Ok(Outcome::ok(body))
        }
        Command::CoeffRing {
            n,
            eval,
            c,
            l,
            prec,
            pi2,
            provenance,
            format,
        } => coeff_ring(n, eval, c, l, prec, pi2, provenance, format),
    }
}

fn gen_u(n: usize, format: Format) -> Result<Outcome, Error> {
    let seq = UtildeSeq::with_len(n)?;
    let body = if format.csv {
        csv_rows(
            &["n", "r", "s", "coeff"],
            seq.entries().iter().enumerate().flat_map(|(k, p)| {
                p.terms()
                    .map(move |(e, c)| vec![k.to_string(), e[0].to_string(), e[1].to_string(), c.to_string()])
                    .collect::<Vec<_>>()
            }),
        )?
    } else {
        let polys: Vec<Value> = seq
            .entries()
            .iter()
            .enumerate()
            .map(|(k, p)| Ok(json!({"n": k, "poly": serde_json::to_value(p)?})))
            .collect::<Result<_, serde_json::Error>>()
            .map_err(json_err)?;
        to_json(&json!({"sequence": "u_tilde", "n_max": n, "polys": polys}))?
    };
    Ok(Outcome::ok(body))
}

fn solve(a2: &Rational, depth: usize, tol: &Rational, root_index: usize, table: bool) -> Result<Outcome, Error> {
    if table {
        let depths: Vec<usize> = (1..=depth).collect();
        let report = convergence_table(a2, &depths, tol)?;
        return Ok(Outcome::ok(to_json(&report)?));
    }
    let root = lambda_branch(a2, depth, tol, root_index)?;
    let fixed = if root_index == 1 {
        match lambda_fixed_point(a2, depth, tol, FIXED_POINT_MAX_ITER) {
            Ok(f) => {
                let diff = (&f.lambda - &root.lambda).abs();
                json!({
                    "lambda": format_rational(&f.lambda),
                    "iterations": f.iterations,
                    "difference": format_rational(&diff),
                    "agrees": diff <= *tol,
                })
            }
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    let body = to_json(&json!({
        "a2": format_rational(a2),
        "depth": depth,
        "tolerance": format_rational(tol),
        "root_index": root_index,
        "root": root,
        "fixed_point": fixed,
        "note": BRANCH_NOTE,
    }))?;
    Ok(Outcome::ok(body))
}

#[allow(clippy::too_many_arguments)]
fn coeff_ring(
    n: usize,
    eval: bool,
    c: Option<String>,
    l: Option<String>,
    prec: u32,
    pi2: Option<String>,
    provenance: Option<String>,
    format: Format,
) -> Result<Outcome, Error> {
    let all = c_n_symbolic_all(n)?;
    let consts = if eval {
        let need = |v: Option<String>, what: &str| {
            v.ok_or_else(|| Error::InvalidConstants(format!("--{what} is required with --eval")))
        };
        Some(HbConstants {
            c_value: parse_rational(&need(c, "c")?)?,
            l_value: parse_rational(&need(l, "l")?)?,
            pi_precision: prec,
            pi2_override: pi2.as_deref().map(parse_rational).transpose()?,
            provenance: need(provenance, "provenance")?,
        })
    } else {
        None
    };
    let numeric = match &consts {
        Some(k) => Some(all.iter().map(|h| c_n_numeric(h, k)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let body = if format.csv {
        match &numeric {
            Some(vals) => csv_rows(
                &["n", "value", "error_bound", "provenance"],
                vals.iter().map(|v| {
                    vec![
                        v.n.to_string(),
                        format_rational(&v.value),
                        format_rational(&v.error_bound),
                        v.provenance.clone(),
                    ]
                }),
            )?,
            None => csv_rows(
                &["n", "pi2", "C", "L", "coeff"],
                all.iter().flat_map(|h| {
                    h.poly
                        .terms()
                        .map(|(e, a)| {
                            vec![h.n.to_string(), e[0].to_string(), e[1].to_string(), e[2].to_string(), a.to_string()]
                        })
                        .collect::<Vec<_>>()
                }),
            )?,
        }
    } else {
        let mut doc = json!({ "n_max": n, "coefficients": all });
        if let (Some(vals), Some(k)) = (numeric, consts) {
            doc["numeric"] = serde_json::to_value(vals).map_err(json_err)?;
            doc["constants"] = json!({
                "C": format_rational(&k.c_value),
                "L": format_rational(&k.l_value),
                "pi_precision": k.pi_precision,
                "pi2": k.pi2_override.as_ref().map(format_rational),
                "provenance": k.provenance,
            });
        }
        to_json(&doc)?
    };
    Ok(Outcome::ok(body))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("serialization: {e}"))
}

/// Pretty JSON with keys sorted (serde_json's map is ordered).
fn to_json<T: Serialize>(v: &T) -> Result<String, Error> {
    let value = serde_json::to_value(v).map_err(json_err)?;
    serde_json::to_string_pretty(&value).map_err(json_err)
}

fn csv_rows<I>(header: &[&str], rows: I) -> Result<String, Error>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
