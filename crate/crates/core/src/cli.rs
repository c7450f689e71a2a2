//! The `radpoly` command-line front end.
//!
//! Exit status: 0 on success, 1 for usage or input errors, 2 when the
//! mathematics fails (rank deficiency, cap exceeded, singular Gramian), 3 when
//! a verification suite reports failures.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::functional::{radial_power_expansion, reassemble_expansion};
use crate::graded::build_graded_basis;
use crate::interp::{compare_span, projector, Method};
use crate::io::{
    self, BasisDoc, BothDoc, ComparisonDoc, EvalDoc, ExpansionDoc, ExpansionTermDoc, InterpolantFile, PolynomialDoc,
    ProblemData, ProblemDoc, Rat, ReportDoc,
};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Overrides the default cap on the degrees searched by the graded basis.
pub const MAX_DEGREE_ENV: &str = "RADPOLY_MAX_DEGREE";

const EXPAND_MAX_K: u32 = 8;
const EXPAND_MAX_D: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "radpoly", version, about = "Exact minimal-degree polynomial interpolation")]
pub struct Cli {
    /// JSON input file (standard input when omitted).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Digits after the decimal point for the decimal rendering in `eval`.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the graded basis of the functionals in a problem file.
    Basis {
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Interpolate values or a target polynomial.
    Interp {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Evaluate an interpolant (or plain polynomial) file at points.
    Eval {
        /// A point such as `1/2,1/2`; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
        /// JSON file holding a list of points.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Which interpolant to use from a two-method report.
        #[arg(long, value_enum)]
        method: Option<SingleMethod>,
    },
    /// List the terms of the expansion of ‖x − y‖^{2k} in d variables.
    Expand {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: usize,
    },
    /// Run seeded randomized property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
    /// Compare the ranges and interpolants of both methods.
    Compare {
        #[arg(long, default_value_t = 3)]
        probe_degree: u32,
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Schaback,
    Least,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SingleMethod {
    Schaback,
    Least,
}

/// A failed command with its exit status.
#[derive(Debug)]
struct Failed {
    status: i32,
    message: String,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::RankDeficient { .. }
            | Error::CapExceeded { .. }
            | Error::OrderExceedsCap { .. }
            | Error::SingularGramian => 2,
            Error::DimensionMismatch { .. } | Error::DuplicatePoint(_) | Error::InvalidInput(_) => 1,
        };
        Failed {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failed {
    Failed {
        status: 1,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if status == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return status;
        }
    };
    match execute(&cli, stderr) {
        Ok((text, status)) => match write_output(cli.output.as_deref(), &text, stdout) {
            Ok(()) => status,
            Err(f) => report(f, stderr),
        },
        Err(f) => report(f, stderr),
    }
}

fn report(f: Failed, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {}", f.message);
    f.status
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failed> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failed> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Cap precedence: command-line flag, problem file, environment, default.
fn resolve_cap(flag: Option<u32>, problem: &ProblemDoc) -> Result<Option<u32>, Failed> {
    if flag.is_some() {
        return Ok(flag);
    }
    if problem.cap.is_some() {
        return Ok(problem.cap);
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{MAX_DEGREE_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<(String, i32), Failed> {
    match &cli.command {
        Command::Basis { cap } => {
            let problem: ProblemDoc = io::from_json(&read_input(cli.input.as_deref())?)?;
            let basis = build_graded_basis(&problem.span()?, resolve_cap(*cap, &problem)?)?;
            Ok((io::to_json(&BasisDoc::from(&basis)), 0))
        }
        Command::Interp { method, cap } => {
            let problem: ProblemDoc = io::from_json(&read_input(cli.input.as_deref())?)?;
            let basis = build_graded_basis(&problem.span()?, resolve_cap(*cap, &problem)?)?;
            let data = problem.data()?;
            let interpolate = |m: Method| -> Result<ReportDoc, Failed> {
                let proj = projector(m, &basis)?;
                let report = match &data {
                    ProblemData::Values(v) => proj.interpolate_data(v)?,
                    ProblemData::Target(p) => proj.interpolate_target(p)?,
                };
                Ok(ReportDoc::from(&report))
            };
            let text = match method {
                MethodArg::Schaback => io::to_json(&interpolate(Method::Schaback)?),
                MethodArg::Least => io::to_json(&interpolate(Method::Least)?),
                MethodArg::Both => {
                    let schaback = interpolate(Method::Schaback)?;
                    let least = interpolate(Method::Least)?;
                    let diff = schaback
                        .interpolant
                        .to_polynomial()?
                        .checked_sub(&least.interpolant.to_polynomial()?)?;
                    io::to_json(&BothDoc {
                        schaback,
                        least,
                        difference: PolynomialDoc::from(&diff),
                    })
                }
            };
            Ok((text, 0))
        }
        Command::Eval { at, points, method } => {
            let file: InterpolantFile = io::from_json(&read_input(cli.input.as_deref())?)?;
            let poly = match (file, method) {
                (InterpolantFile::Both(b), Some(SingleMethod::Schaback)) => b.schaback.interpolant,
                (InterpolantFile::Both(b), Some(SingleMethod::Least)) => b.least.interpolant,
                (InterpolantFile::Both(_), None) => {
                    return Err(usage("the input holds two interpolants; pass --method"));
                }
                (InterpolantFile::Report(r), _) => r.interpolant,
                (InterpolantFile::Polynomial(p), _) => p,
            }
            .to_polynomial()?;
            let mut queries = Vec::new();
            for s in at {
                queries.push(parse_point(s)?);
            }
            if let Some(path) = points {
                let pts: Vec<Vec<Rat>> = io::from_json(&read_input(Some(path))?)?;
                queries.extend(pts.into_iter().map(|x| x.into_iter().map(|r| r.0).collect()));
            }
            if queries.is_empty() {
                return Err(usage("no query points; pass --at or --points"));
            }
            Ok((io::to_json(&evaluate(&poly, &queries, cli.precision)?), 0))
        }
        Command::Expand { k, d } => {
            if *d == 0 || *d > EXPAND_MAX_D || *k > EXPAND_MAX_K {
                return Err(usage(format!(
                    "expand needs 1 <= d <= {EXPAND_MAX_D} and k <= {EXPAND_MAX_K}"
                )));
            }
            Ok((io::to_json(&expansion(*k, *d)), 0))
        }
        Command::Verify {
            suite,
            seed,
            trials,
            inject_sign_flip,
        } => {
            let report = run_suite(
                *suite,
                *seed,
                *trials,
                &VerifyOptions {
                    sign_flip: *inject_sign_flip,
                },
            );
            let _ = writeln!(
                stderr,
                "verify {}: {} cases, {} failures, {:.2}s",
                report.suite,
                report.cases,
                report.failures.len(),
                report.wall_time.as_secs_f64()
            );
            let status = if report.passed() { 0 } else { 3 };
            Ok((io::to_json(&report), status))
        }
        Command::Compare { probe_degree, cap } => {
            let problem: ProblemDoc = io::from_json(&read_input(cli.input.as_deref())?)?;
            let report = compare_span(&problem.span()?, resolve_cap(*cap, &problem)?, *probe_degree)?;
            Ok((io::to_json(&ComparisonDoc::from(&report)), 0))
        }
    }
}

fn parse_point(s: &str) -> Result<Vec<Rational>, Failed> {
    s.split(',')
        .map(|c| rational::parse(c.trim()).ok_or_else(|| usage(format!("invalid coordinate {c:?} in {s:?}"))))
        .collect()
}

fn evaluate(poly: &Polynomial, queries: &[Vec<Rational>], precision: Option<usize>) -> Result<EvalDoc, Failed> {
    let values = queries
        .iter()
        .map(|x| poly.eval(x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EvalDoc {
        decimal: precision.map(|p| values.iter().map(|v| rational::to_decimal(v, p)).collect()),
        values: values.into_iter().map(Rat).collect(),
    })
}

/// Expansion listing checked against the brute-force power of the squared
/// distance.
pub fn expansion(k: u32, d: usize) -> ExpansionDoc {
    let terms = radial_power_expansion(k, d);
    let poly = reassemble_expansion(&terms, d);
    let oracle = (0..d)
        .map(|i| {
            let diff = &Polynomial::variable(2 * d, i) - &Polynomial::variable(2 * d, d + i);
            &diff * &diff
        })
        .fold(Polynomial::zero(2 * d), |acc, t| &acc + &t)
        .pow(k);
    let names: Vec<String> = (1..=d)
        .map(|i| format!("x{i}"))
        .chain((1..=d).map(|i| format!("y{i}")))
        .collect();
    ExpansionDoc {
        k,
        d,
        terms: terms
            .iter()
            .map(|t| ExpansionTermDoc {
                a: t.a,
                beta: t.beta.exponents().to_vec(),
                c: t.c,
                coeff: Rat(t.coeff.clone()),
            })
            .collect(),
        text: poly.display_with(&names),
        oracle_match: poly == oracle,
        polynomial: PolynomialDoc::from(&poly),
    }
}
