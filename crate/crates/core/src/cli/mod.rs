//! The `coulombkit` command-line front end.
//!
//! Every subcommand produces a result envelope. With `--json` it is
//! printed as pretty JSON, otherwise a short human-readable rendering is
//! printed. Exit statuses: `0` success, `1` golden mismatch, `2` schema or
//! input error, `3` bad theory, `4` unsupported request, `5` internal
//! invariant violation (including failed checks).

pub mod expr;
pub mod files;
mod golden;
mod repl;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian_algebra::{Context, Mode};
use crate::abelianization::{minuscule_lift, rank1_branch, Family};
use crate::degeneration::chamber_generators;
use crate::error::{Error, Result};
use crate::hypertoric::compare_with_monopole;
use crate::lattice::Coweight;
use crate::monopole::{monopole_series, MonopoleRequest};
use crate::properties::run_all;
use crate::symbolic::{fmt_rational, TruncatedSeries};

use files::{LoadedTheory, SequenceFile, TheoryFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "coulombkit",
    version,
    about = "Exact computations with Coulomb branch algebras"
)]
pub struct Cli {
    /// Print the result envelope as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing in the diagnostics.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Algebra mode: classical, quantized or flavored.
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series from the monopole formula.
    Hilbert {
        /// Theory file (JSON, or TOML by extension).
        theory: PathBuf,
        /// Highest power of `t` to compute.
        #[arg(long)]
        max_degree: i64,
        /// Also split the series by the flavor charges.
        #[arg(long)]
        refined: bool,
        /// Per-entry flavor charges, overriding the theory file.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        charges: Option<Vec<i64>>,
    },
    /// Normal form of an element of the abelian algebra.
    Eval {
        /// Theory file (JSON, or TOML by extension).
        theory: PathBuf,
        /// Element expression such as `r[1]*t1 - t1*r[1]`.
        expression: String,
    },
    /// Hypersurface equation of a rank-one Coulomb branch.
    Rank1 {
        /// Theory file (JSON, or TOML by extension).
        theory: PathBuf,
    },
    /// Minuscule lift of `f[R_λ]` into the localized algebra.
    Lift {
        /// Theory file (JSON, or TOML by extension).
        theory: PathBuf,
        /// Dominant coweight, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        /// Dressing polynomial in `t1, .., hbar`.
        #[arg(long, default_value = "1")]
        f: String,
    },
    /// Chamber generators of the associated graded algebra.
    GrGenerators {
        /// Theory file (JSON, or TOML by extension).
        theory: PathBuf,
    },
    /// Monopole series of a hypertoric theory against the reduction count.
    Hypertoric {
        /// Lattice sequence file with `alpha` and optional `beta`.
        sequence: PathBuf,
        /// Highest power of `t` to compare.
        #[arg(long)]
        max_degree: i64,
    },
    /// Randomized checks of the algebra axioms.
    Check {
        /// Seed for replaying a run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per property.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Interactive evaluation of element expressions.
    Repl {
        /// Theory file; U(1) with one flavor if omitted.
        theory: Option<PathBuf>,
    },
    /// Runs every `*.case.json` file in a directory.
    Golden {
        /// Directory holding the case files.
        dir: PathBuf,
        /// Rewrite the expected outputs instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    Mode::parse(s).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Diagnostics {
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    quality: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// The machine-readable record of one command run.
#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
    diagnostics: Diagnostics,
}

/// What a command computed, before rendering.
struct Outcome {
    result: Value,
    human: String,
    quality: Option<String>,
    exit_code: i32,
}

impl Outcome {
    fn ok(result: Value, human: String) -> Self {
        Outcome {
            result,
            human,
            quality: None,
            exit_code: 0,
        }
    }
}

fn load_theory(path: &Path) -> Result<LoadedTheory> {
    TheoryFile::read(path)?.load()
}

fn effective_mode(cli: Option<Mode>, file: Option<Mode>) -> Mode {
    cli.or(file).unwrap_or(Mode::Classical)
}

/// `[[2·exponent, 2, "coefficient"], ...]` over the nonzero coefficients.
pub fn series_json(s: &TruncatedSeries) -> Value {
    Value::Array(
        s.iter()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| json!([k, 2, fmt_rational(c)]))
            .collect(),
    )
}

fn fmt_exponent(half: i64) -> String {
    if half % 2 == 0 {
        format!("t^{}", half / 2)
    } else {
        format!("t^{half}/2")
    }
}

fn series_table(s: &TruncatedSeries) -> String {
    let mut out = String::new();
    for (k, c) in s.iter() {
        if !num_traits::Zero::is_zero(c) {
            out.push_str(&format!("{:<8} {}\n", fmt_exponent(*k), fmt_rational(c)));
        }
    }
    out
}

fn cmd_hilbert(
    path: &Path,
    max_degree: i64,
    refined: bool,
    charges: Option<Vec<i64>>,
) -> Result<Outcome> {
    let lt = load_theory(path)?;
    let entries = lt.theory.matter.len();
    let mut req = MonopoleRequest::new(lt.theory, max_degree);
    if refined {
        req = req.refined(
            charges
                .or(lt.flavor_charges)
                .unwrap_or_else(|| vec![1; entries]),
        );
    }
    let h = monopole_series(&req)?;
    let mut result = json!({
        "max_degree": max_degree,
        "coeffs": series_json(&h.series),
        "quality": h.quality.as_str(),
        "coweights_summed": h.coweights_summed,
        "radius": h.radius,
    });
    let mut human = series_table(&h.series);
    if let Some(r) = &h.refined {
        let parts: serde_json::Map<String, Value> = r
            .iter()
            .map(|(z, s)| (z.to_string(), series_json(s)))
            .collect();
        result["refined"] = Value::Object(parts);
        for (z, s) in r {
            human.push_str(&format!("z^{z}:\n{}", series_table(s)));
        }
    }
    human.push_str(&format!("quality: {}\n", h.quality.as_str()));
    Ok(Outcome {
        quality: Some(h.quality.as_str().to_string()),
        ..Outcome::ok(result, human)
    })
}

fn cmd_eval(path: &Path, src: &str, mode: Option<Mode>) -> Result<Outcome> {
    let lt = load_theory(path)?;
    let mode = effective_mode(mode, lt.mode);
    let ctx = Context::new(lt.theory.rd.rank(), lt.theory.matter.clone(), mode)?;
    let x = expr::parse_element(src, &ctx)?;
    let shown = x.to_string();
    Ok(Outcome::ok(
        json!({ "mode": mode.as_str(), "element": shown }),
        format!("{shown}\n"),
    ))
}

fn cmd_rank1(path: &Path, mode: Option<Mode>) -> Result<Outcome> {
    let lt = load_theory(path)?;
    let mode = effective_mode(mode, lt.mode);
    let h = rank1_branch(&lt.theory, mode)?;
    let c = fmt_rational(&h.c);
    let label = format!("D_{}", h.n);
    let human = match h.family {
        Family::Generic => {
            let rhs = match h.n {
                1 => c.clone(),
                2 => format!("{c}*delta"),
                n => format!("{c}*delta^{}", n - 1),
            };
            format!("xi^2 - delta*eta^2 = {rhs} (type {label})\n")
        }
        Family::Exceptional => format!("xi^2 - delta*eta^2 = {c}*eta (type {label})\n"),
    };
    Ok(Outcome::ok(
        json!({
            "family": "D",
            "N": h.n,
            "c": c,
            "equation": h.family.as_str(),
            "mode": mode.as_str(),
            "degrees": { "xi": h.deg_xi, "eta": h.deg_eta, "delta": h.deg_delta },
        }),
        human,
    ))
}

fn cmd_lift(path: &Path, lambda: &[i64], f: &str, mode: Option<Mode>) -> Result<Outcome> {
    let lt = load_theory(path)?;
    let mode = effective_mode(mode, lt.mode);
    let rd = &lt.theory.rd;
    if lambda.len() != rd.rank() {
        return Err(Error::Dimension {
            expected: rd.rank(),
            got: lambda.len(),
        });
    }
    let ctx = Context::new(rd.rank(), lt.theory.matter.clone(), mode)?;
    let poly = expr::parse_poly(f, ctx.space())?;
    let x = minuscule_lift(&poly, &Coweight(lambda.to_vec()), &ctx, rd)?;
    let shown = x.to_string();
    Ok(Outcome::ok(
        json!({ "mode": mode.as_str(), "lambda": lambda, "f": poly.to_string(), "element": shown }),
        format!("{shown}\n"),
    ))
}

fn cmd_gr_generators(path: &Path) -> Result<Outcome> {
    let lt = load_theory(path)?;
    let d = chamber_generators(&lt.theory.rd, &lt.theory.matter)?;
    let coords = |v: &[Coweight]| v.iter().map(|c| c.0.clone()).collect::<Vec<_>>();
    let chambers: Vec<Value> = d
        .chambers
        .iter()
        .map(|c| json!({ "signs": c.signs, "rays": coords(&c.rays), "generators": coords(&c.generators) }))
        .collect();
    let mut human = String::new();
    for c in &d.chambers {
        let gens: Vec<String> = c.generators.iter().map(|g| format!("{:?}", g.0)).collect();
        human.push_str(&format!("{:?}: {}\n", c.signs, gens.join(" ")));
    }
    Ok(Outcome::ok(
        json!({
            "normals": d.normals.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "chambers": chambers,
            "verified_radius": d.verified_radius,
        }),
        human,
    ))
}

fn cmd_hypertoric(path: &Path, max_degree: i64) -> Result<Outcome> {
    let seq = SequenceFile::read(path)?.load()?;
    let cmp = compare_with_monopole(&seq, max_degree)?;
    let verdict = format!("match: {} up to t^{max_degree}", cmp.matches);
    let human = format!(
        "monopole:\n{}reduction:\n{}{verdict}\n",
        series_table(&cmp.monopole),
        series_table(&cmp.oracle)
    );
    Ok(Outcome {
        exit_code: if cmp.matches { 0 } else { 5 },
        ..Outcome::ok(
            json!({
                "max_degree": max_degree,
                "monopole": series_json(&cmp.monopole),
                "oracle": series_json(&cmp.oracle),
                "match": cmp.matches,
                "verdict": verdict,
            }),
            human,
        )
    })
}

fn cmd_check(seed: u64, cases: usize) -> Result<Outcome> {
    let reports = run_all(seed, cases)?;
    let pass = reports.iter().all(|r| r.passed());
    let mut human = String::new();
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        human.push_str(&format!(
            "{status} {} ({} cases, {} failures)\n",
            r.name,
            r.cases,
            r.failures.len()
        ));
    }
    Ok(Outcome {
        exit_code: if pass { 0 } else { 5 },
        ..Outcome::ok(
            json!({ "seed": seed, "cases": cases, "checks": reports, "pass": pass }),
            human,
        )
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hilbert { .. } => "hilbert",
        Command::Eval { .. } => "eval",
        Command::Rank1 { .. } => "rank1",
        Command::Lift { .. } => "lift",
        Command::GrGenerators { .. } => "gr-generators",
        Command::Hypertoric { .. } => "hypertoric",
        Command::Check { .. } => "check",
        Command::Repl { .. } => "repl",
        Command::Golden { .. } => "golden",
    }
}

fn input_name(c: &Command) -> Option<String> {
    let p = match c {
        Command::Hilbert { theory, .. }
        | Command::Eval { theory, .. }
        | Command::Rank1 { theory }
        | Command::Lift { theory, .. }
        | Command::GrGenerators { theory } => theory,
        Command::Hypertoric { sequence, .. } => sequence,
        _ => return None,
    };
    p.file_name().map(|n| n.to_string_lossy().into_owned())
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Hilbert {
            theory,
            max_degree,
            refined,
            charges,
        } => cmd_hilbert(theory, *max_degree, *refined, charges.clone()),
        Command::Eval { theory, expression } => cmd_eval(theory, expression, cli.mode),
        Command::Rank1 { theory } => cmd_rank1(theory, cli.mode),
        Command::Lift { theory, lambda, f } => cmd_lift(theory, lambda, f, cli.mode),
        Command::GrGenerators { theory } => cmd_gr_generators(theory),
        Command::Hypertoric {
            sequence,
            max_degree,
        } => cmd_hypertoric(sequence, *max_degree),
        Command::Check { seed, cases } => cmd_check(*seed, *cases),
        Command::Repl { .. } | Command::Golden { .. } => unreachable!("handled by run_with_io"),
    }
}

/// Runs the CLI with explicit streams and returns the exit status.
pub fn run_with_io<I, S>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match &cli.command {
        Command::Repl { theory } => {
            return repl::run(theory.as_deref(), cli.mode, input, out, err);
        }
        Command::Golden { dir, bless } => return golden::run(dir, *bless, out, err),
        _ => {}
    }
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let timing_ms = cli.timing.then(|| start.elapsed().as_millis());
    let command = command_name(&cli.command);
    let input = input_name(&cli.command);
    let (envelope, human, code) = match outcome {
        Ok(o) => (
            Envelope {
                command,
                input,
                version: VERSION,
                result: Some(o.result),
                error: None,
                diagnostics: Diagnostics {
                    exit_code: o.exit_code,
                    quality: o.quality,
                    timing_ms,
                },
            },
            o.human,
            o.exit_code,
        ),
        Err(e) => {
            let code = e.exit_code();
            let quality = matches!(e, Error::BadTheory(_)).then(|| "bad".to_string());
            let human = format!("error ({}): {e}\n", e.kind());
            (
                Envelope {
                    command,
                    input,
                    version: VERSION,
                    result: None,
                    error: Some(ErrorBody {
                        kind: e.kind(),
                        message: e.to_string(),
                    }),
                    diagnostics: Diagnostics {
                        exit_code: code,
                        quality,
                        timing_ms,
                    },
                },
                human,
                code,
            )
        }
    };
    let written = if cli.json {
        let text = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
        writeln!(out, "{text}")
    } else if code == 0 {
        write!(out, "{human}")
    } else {
        write!(err, "{human}")
    };
    if written.is_err() {
        return 5;
    }
    if !cli.json && timing_ms.is_some() {
        let _ = writeln!(err, "elapsed: {} ms", timing_ms.unwrap_or(0));
    }
    code
}

/// Runs the CLI on the process streams.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with_io(args, &mut input, &mut out, &mut err)
}

/// Runs the CLI with captured output: `(exit code, stdout, stderr)`.
pub fn run_captured<I, S>(args: I, stdin: &str) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let mut input = std::io::Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_io(args, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
