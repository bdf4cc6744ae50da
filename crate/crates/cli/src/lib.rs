//! `p1z`: positivity data of `D_{a,b}` on the projective line over the
//! integers, from the command line.
//!
//! Every invocation writes one JSON envelope (or CSV rows for `zariski
//! --format csv`) and exits with 0 on success, 1 when `verify` finds a
//! failing check or output cannot be written, 2 on usage errors and 3 on
//! domain errors.

mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::Value;

use p1z_core::charfun::{classify, phi_max, theta_interval};
use p1z_core::sections::{
    h0_enumerate_with, h0_monomial_span, h0_nonzero, monomial_l2_norm_sq, monomial_sup_norm_sq,
    EnumerateOptions, MonomialBasisElement, SectionNorm, DEFAULT_ENUMERATION_CAP,
};
use p1z_core::verify::{run_suite, Suite};
use p1z_core::volume::{
    construct_gap_params, selfint_degree, selfint_quadrature, volume_closed,
    volume_lattice_estimate, volume_quadrature,
};
use p1z_core::zariski::{
    nef_witness, negative_green_regularized, zariski_decomposition, RadialFormula,
};
use p1z_core::{Error, Params, SpherePoint, ThetaInterval, ThetaKind, Tolerance};

pub use output::{num, Envelope, SCHEMA_VERSION};
use output::{obj, write_profile_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Default number of radii in a `zariski` profile.
pub const DEFAULT_PROFILE_SAMPLES: usize = 512;

#[derive(Debug, Parser)]
#[command(
    name = "p1z",
    version,
    about = "Positivity of the arithmetic divisors D_{a,b} on P^1 over Z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Solver tolerance (absolute and relative)
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// a > 0, as a decimal or an exact integer or rational p/q
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// b > 0, as a decimal or an exact integer or rational p/q
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VolumeMethod {
    Closed,
    Quadrature,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormArg {
    Sup,
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Numerics,
    Charfun,
    Sections,
    Volume,
    Zariski,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Geography class: ample, nef, big, pseudo-effective
    Classify(ParamArgs),
    /// The interval Θ where φ ≥ 0
    Theta(ParamArgs),
    /// Arithmetic volume
    Volume {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = VolumeMethod::Closed)]
        method: VolumeMethod,
        /// Level for the lattice method
        #[arg(long, default_value_t = 1000)]
        n: u32,
    },
    /// Self-intersection (log(ab) + 1)/2
    Selfint(ParamArgs),
    /// Small sections at level n
    Sections {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u32,
        /// List all sections of norm at most 1
        #[arg(long, value_enum)]
        enumerate: Option<NormArg>,
        /// Report the monomial span of nΘ ∩ Z
        #[arg(long)]
        span: bool,
        /// Enumerate only multiples of monomials
        #[arg(long)]
        monomials_only: bool,
        /// Largest level accepted by --enumerate
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u32,
    },
    /// Zariski decomposition and a radial profile of its positive part
    Zariski {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_PROFILE_SAMPLES)]
        samples: usize,
        #[arg(long)]
        rmin: Option<f64>,
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Rational (a, b) with a + b > 1 and no small sections up to level n
    ConstructGap {
        #[arg(long)]
        n: u32,
    },
    /// Run the invariant suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

/// Runs the command line `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let tol = match cli.tol.map(Tolerance::uniform).transpose() {
        Ok(t) => t.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: --tol: {e}");
            return EXIT_USAGE;
        }
    };
    if cli.format == Format::Csv && !matches!(cli.command, Command::Zariski { .. }) {
        eprintln!("error: --format csv is only available for zariski");
        return EXIT_USAGE;
    }
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let outcome = dispatch(&cli.command, tol, cli.format == Format::Csv);
    let code = match &outcome {
        Outcome::Json(env, code) => write_or_fail(env.write_json(&mut sink), *code),
        Outcome::Csv(rows) => write_or_fail(
            write_profile_csv(&mut sink, rows).map_err(io::Error::other),
            EXIT_OK,
        ),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    if let Err(e) = sink.flush() {
        eprintln!("error: {e}");
        return EXIT_FAILURE;
    }
    code
}

fn write_or_fail(r: io::Result<()>, code: i32) -> i32 {
    match r {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

enum Outcome {
    Json(Envelope, i32),
    Csv(Vec<[f64; 4]>),
    Usage(String),
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify(_) => "classify",
        Command::Theta(_) => "theta",
        Command::Volume { .. } => "volume",
        Command::Selfint(_) => "selfint",
        Command::Sections { .. } => "sections",
        Command::Zariski { .. } => "zariski",
        Command::ConstructGap { .. } => "construct-gap",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(cmd: &Command, tol: Tolerance, csv: bool) -> Outcome {
    let mut env = Envelope::new(command_name(cmd));
    let params = match cmd {
        Command::Classify(p) | Command::Theta(p) | Command::Selfint(p) => Some(p),
        Command::Volume { params, .. }
        | Command::Sections { params, .. }
        | Command::Zariski { params, .. } => Some(params),
        _ => None,
    };
    let parsed = match params {
        Some(pa) => {
            env.param("a", pa.a.clone());
            env.param("b", pa.b.clone());
            match parse_params(&pa.a, &pa.b) {
                Ok(p) => Some(p),
                Err(e) => return fail(env, e),
            }
        }
        None => None,
    };
    let result = match (cmd, parsed) {
        (Command::Classify(_), Some(p)) => cmd_classify(&p, &mut env),
        (Command::Theta(_), Some(p)) => cmd_theta(&p, tol, &mut env),
        (Command::Volume { method, n, .. }, Some(p)) => cmd_volume(&p, *method, *n, tol, &mut env),
        (Command::Selfint(_), Some(p)) => cmd_selfint(&p, tol, &mut env),
        (
            Command::Sections {
                n,
                enumerate,
                span,
                monomials_only,
                cap,
                ..
            },
            Some(p),
        ) => {
            let opts = EnumerateOptions {
                cap: *cap,
                monomials_only: *monomials_only,
                ..Default::default()
            };
            cmd_sections(&p, *n, *enumerate, *span, opts, tol, &mut env)
        }
        (
            Command::Zariski {
                samples,
                rmin,
                rmax,
                ..
            },
            Some(p),
        ) => match cmd_zariski(&p, *samples, *rmin, *rmax, tol, &mut env) {
            Ok(rows) if csv => return Outcome::Csv(rows),
            Ok(_) => Ok(()),
            Err(e) => Err(e),
        },
        (Command::ConstructGap { n }, _) => {
            env.param("n", n.to_string());
            cmd_construct_gap(*n, &mut env)
        }
        (Command::Verify { suite }, _) => {
            let code = cmd_verify(*suite, &mut env);
            return Outcome::Json(env, code);
        }
        _ => unreachable!("parameters are parsed for every command that takes them"),
    };
    match result {
        Ok(()) => Outcome::Json(env, EXIT_OK),
        Err(e) => fail(env, e),
    }
}

fn fail(mut env: Envelope, e: CmdError) -> Outcome {
    match e {
        CmdError::Usage(msg) => Outcome::Usage(msg),
        CmdError::Domain(e) => {
            env.payload = Value::Null;
            env.diagnostics.push(e.to_string());
            Outcome::Json(env, EXIT_DOMAIN)
        }
    }
}

enum CmdError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Domain(e)
    }
}

type CmdResult<T = ()> = Result<T, CmdError>;

/// Parses `p/q` and integers as exact rationals and anything else as a
/// decimal.
fn parse_value(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Scalar::Exact(BigRational::new(n, d)));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Scalar::Exact(BigRational::from_integer(n)));
    }
    s.parse()
        .map(Scalar::Float)
        .map_err(|_| format!("{s:?} is neither a decimal nor p/q"))
}

#[derive(Debug, Clone, PartialEq)]
enum Scalar {
    Float(f64),
    Exact(BigRational),
}

impl Scalar {
    fn to_f64(&self) -> f64 {
        match self {
            Scalar::Float(x) => *x,
            // nonpositive values are rejected by Params::new anyway
            Scalar::Exact(r) => Params::from_rationals(r.clone(), BigRational::one())
                .map(|p| p.a())
                .unwrap_or(-1.0),
        }
    }
}

/// Two exact values take the exact path; anything else is rounded to floats.
fn parse_params(a: &str, b: &str) -> CmdResult<Params> {
    let a = parse_value(a).map_err(CmdError::Usage)?;
    let b = parse_value(b).map_err(CmdError::Usage)?;
    let p = match (&a, &b) {
        (Scalar::Exact(ar), Scalar::Exact(br)) => Params::from_rationals(ar.clone(), br.clone()),
        _ => Params::new(a.to_f64(), b.to_f64()),
    };
    Ok(p?)
}

fn theta_json(th: &ThetaInterval) -> Value {
    let kind = match th.kind {
        ThetaKind::Empty => "Empty",
        ThetaKind::Point => "Point",
        ThetaKind::Interval => "Interval",
    };
    obj([
        ("kind", Value::String(kind.into())),
        ("lower", th.lower.map_or(Value::Null, num)),
        ("upper", th.upper.map_or(Value::Null, num)),
        ("length", num(th.length())),
        ("solver_tol", num(th.solver_tol)),
    ])
}

fn cmd_classify(p: &Params, env: &mut Envelope) -> CmdResult {
    let c = classify(p);
    env.payload = obj([
        ("class", Value::String(c.name().into())),
        ("ample", Value::Bool(c == p1z_core::GeographyClass::Ample)),
        ("nef", Value::Bool(c.is_nef())),
        ("big", Value::Bool(c.is_big())),
        (
            "pseudo_effective",
            Value::Bool(c != p1z_core::GeographyClass::NotPseudoEffective),
        ),
        ("exact", Value::Bool(p.exact().is_some())),
    ]);
    Ok(())
}

fn cmd_theta(p: &Params, tol: Tolerance, env: &mut Envelope) -> CmdResult {
    let th = theta_interval(p, tol)?;
    let (x, v) = phi_max(p);
    env.payload = obj([
        ("theta", theta_json(&th)),
        ("phi_max", obj([("x", num(x)), ("value", num(v))])),
    ]);
    Ok(())
}

fn cmd_volume(
    p: &Params,
    method: VolumeMethod,
    n: u32,
    tol: Tolerance,
    env: &mut Envelope,
) -> CmdResult {
    let th = theta_interval(p, tol)?;
    env.payload = match method {
        VolumeMethod::Closed => obj([
            ("method", "closed".into()),
            ("value", num(volume_closed(p, &th))),
        ]),
        VolumeMethod::Quadrature => obj([
            ("method", "quadrature".into()),
            ("value", num(volume_quadrature(p, &th, tol)?)),
        ]),
        VolumeMethod::Lattice => {
            env.param("n", n.to_string());
            let e = volume_lattice_estimate(p, n, &th)?;
            if p.sum_cmp_one() != std::cmp::Ordering::Greater {
                env.diagnostics
                    .push("a + b ≤ 1: the volume is 0 and the bounds only bracket it".into());
            }
            obj([
                ("method", "lattice".into()),
                ("lower", num(e.lower)),
                ("upper", num(e.upper)),
                ("n", e.n.into()),
                ("dim", e.dim.into()),
                ("closed", num(volume_closed(p, &th))),
            ])
        }
    };
    Ok(())
}

fn cmd_selfint(p: &Params, tol: Tolerance, env: &mut Envelope) -> CmdResult {
    env.payload = obj([
        ("value", num(selfint_degree(p))),
        ("quadrature", num(selfint_quadrature(p, tol)?)),
    ]);
    Ok(())
}

fn cmd_sections(
    p: &Params,
    n: u32,
    enumerate: Option<NormArg>,
    span: bool,
    opts: EnumerateOptions,
    tol: Tolerance,
    env: &mut Envelope,
) -> CmdResult {
    if n == 0 {
        return Err(CmdError::Usage("--n must be at least 1".into()));
    }
    env.param("n", n.to_string());
    let th = theta_interval(p, tol)?;
    let nonzero = h0_nonzero(p, n, &th);
    let monomials: Vec<Value> = (0..=n)
        .map(|i| {
            let m = MonomialBasisElement { n, i };
            obj([
                ("i", i.into()),
                ("sup_norm_sq", num(monomial_sup_norm_sq(p, m))),
                ("l2_norm_sq", num(monomial_l2_norm_sq(p, m))),
            ])
        })
        .collect();
    let mut fields = vec![
        ("n".to_string(), Value::from(n)),
        ("h0_nonzero".to_string(), Value::Bool(nonzero)),
        ("monomials".to_string(), Value::Array(monomials)),
    ];
    if span {
        let s = h0_monomial_span(p, n, &th).unwrap_or_default();
        fields.push((
            "span".into(),
            Value::Array(s.into_iter().map(Value::from).collect()),
        ));
    }
    if let Some(norm) = enumerate {
        let norm = match norm {
            NormArg::Sup => SectionNorm::Sup,
            NormArg::L2 => SectionNorm::L2,
        };
        let e = h0_enumerate_with(p, n, norm, tol, opts)?;
        if e.boundary_count() > 0 {
            env.diagnostics.push(format!(
                "{} section(s) have norm within tolerance of 1 and are flagged boundary_uncertain",
                e.boundary_count()
            ));
        }
        if !e.exact {
            env.diagnostics
                .push("some memberships were decided numerically".into());
        }
        let list: Vec<Value> = e
            .sections
            .iter()
            .map(|s| {
                obj([
                    (
                        "coeffs",
                        Value::Array(s.section.coeffs().iter().map(|&c| c.into()).collect()),
                    ),
                    ("norm_sq", num(s.norm_sq)),
                    ("boundary_uncertain", Value::Bool(s.boundary_uncertain)),
                ])
            })
            .collect();
        fields.push((
            "enumeration".into(),
            obj([
                ("norm", Value::String(norm.name().into())),
                ("count", e.sections.len().into()),
                ("candidates", e.candidates.into()),
                ("exact", Value::Bool(e.exact)),
                ("monomials_only", Value::Bool(opts.monomials_only)),
                ("sections", Value::Array(list)),
            ]),
        ));
    }
    env.payload = Value::Object(fields.into_iter().collect());
    Ok(())
}

/// Log-spaced radii on `[rmin, rmax]` (inclusive), strictly increasing.
fn profile_radii(rmin: f64, rmax: f64, samples: usize) -> Vec<f64> {
    let (l0, l1) = (rmin.ln(), rmax.ln());
    let mut out: Vec<f64> = (0..samples)
        .map(|k| (l0 + (l1 - l0) * k as f64 / (samples - 1) as f64).exp())
        .collect();
    out.dedup_by(|x, y| x <= y);
    out
}

fn cmd_zariski(
    p: &Params,
    samples: usize,
    rmin: Option<f64>,
    rmax: Option<f64>,
    tol: Tolerance,
    env: &mut Envelope,
) -> CmdResult<Vec<[f64; 4]>> {
    if samples < 2 {
        return Err(CmdError::Usage("--samples must be at least 2".into()));
    }
    let z = zariski_decomposition(p, tol)?;
    let (r_in, r_out) = z.radii;
    let lo = rmin.unwrap_or(if r_in > 0.0 { r_in / 10.0 } else { 1e-3 });
    let hi = rmax.unwrap_or(if r_out.is_finite() { 10.0 * r_out } else { 1e3 });
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(CmdError::Usage(format!(
            "need 0 < rmin < rmax < ∞, got [{lo}, {hi}]"
        )));
    }
    let rows: Vec<[f64; 4]> = profile_radii(lo, hi, samples)
        .into_iter()
        .map(|r| {
            let pt = SpherePoint::real(r);
            let pv = z.positive.green.eval_radius(r);
            let g = p1z_core::charfun::green_g(p, pt);
            [r, pv, g, z.negative_green(pt)]
        })
        .collect();
    let witness = nef_witness(p, &z.positive, 1000)?;
    let (neg0, neginf) = negative_green_regularized(p, &z.positive)?;
    let pieces: Vec<Value> = z
        .positive
        .green
        .pieces()
        .iter()
        .map(|q| {
            let kappa = match q.formula {
                RadialFormula::PureLog(k) => num(k),
                RadialFormula::FullGreen { .. } => Value::Null,
            };
            obj([
                ("r_lo", num(q.r_lo)),
                ("r_hi", num(q.r_hi)),
                ("formula", Value::String(q.formula.name().into())),
                ("kappa", kappa),
            ])
        })
        .collect();
    if !witness.passed {
        env.diagnostics
            .push(format!("nef witness failed: {witness:?}"));
    }
    env.param("rmin", format!("{lo}"));
    env.param("rmax", format!("{hi}"));
    env.payload = obj([
        ("theta", theta_json(&z.theta)),
        ("class", Value::String(classify(p).name().into())),
        (
            "breakpoints",
            obj([("r_in", num(r_in)), ("r_out", num(r_out))]),
        ),
        (
            "positive",
            obj([
                ("c0", num(z.positive.c0)),
                ("cinf", num(z.positive.cinf)),
                ("pieces", Value::Array(pieces)),
                ("regularized_at_zero", num(z.positive.regularized_at_zero())),
                (
                    "regularized_at_infinity",
                    num(z.positive.regularized_at_infinity()),
                ),
            ]),
        ),
        (
            "negative",
            obj([
                ("c0", num(z.negative_c0)),
                ("cinf", num(z.negative_cinf)),
                ("regularized_at_zero", num(neg0)),
                ("regularized_at_infinity", num(neginf)),
            ]),
        ),
        (
            "nef_witness",
            obj([
                ("passed", Value::Bool(witness.passed)),
                ("degree_c0", num(witness.degree_c0)),
                ("degree_cinf", num(witness.degree_cinf)),
                ("effectivity_min", num(witness.effectivity_min)),
            ]),
        ),
        (
            "rows",
            Value::Array(
                rows.iter()
                    .map(|r| {
                        obj([
                            ("radius", num(r[0])),
                            ("p", num(r[1])),
                            ("g", num(r[2])),
                            ("neg", num(r[3])),
                        ])
                    })
                    .collect(),
            ),
        ),
    ]);
    Ok(rows)
}

fn cmd_construct_gap(n: u32, env: &mut Envelope) -> CmdResult {
    if n == 0 {
        return Err(CmdError::Usage("--n must be at least 1".into()));
    }
    let g = construct_gap_params(n)?;
    let th = theta_interval(&g.params, Tolerance::default())?;
    let verified = g.h0_nonzero.iter().all(|h| !h);
    if !verified {
        env.diagnostics
            .push("some level l ≤ n has small sections".into());
    }
    env.payload = obj([
        ("a", Value::String(g.a.to_string())),
        ("b", Value::String(g.b.to_string())),
        ("a_float", num(g.params.a())),
        ("b_float", num(g.params.b())),
        ("lambda", Value::String(g.lambda.to_string())),
        ("k", g.k.into()),
        (
            "base",
            obj([
                ("a", Value::String(g.base.0.to_string())),
                ("b", Value::String(g.base.1.to_string())),
            ]),
        ),
        ("class", Value::String(classify(&g.params).name().into())),
        ("theta", theta_json(&th)),
        (
            "h0_nonzero",
            Value::Array(g.h0_nonzero.iter().map(|&h| Value::Bool(h)).collect()),
        ),
        ("verified", Value::Bool(verified)),
    ]);
    Ok(())
}

fn cmd_verify(suite: SuiteArg, env: &mut Envelope) -> i32 {
    let suite = match suite {
        SuiteArg::Numerics => Suite::Numerics,
        SuiteArg::Charfun => Suite::Charfun,
        SuiteArg::Sections => Suite::Sections,
        SuiteArg::Volume => Suite::Volume,
        SuiteArg::Zariski => Suite::Zariski,
        SuiteArg::All => Suite::All,
    };
    env.param("suite", suite.name());
    let rep = run_suite(suite);
    for c in rep.failures() {
        env.diagnostics
            .push(format!("{}/{} failed: {}", c.suite, c.name, c.detail));
    }
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            obj([
                ("suite", Value::String(c.suite.into())),
                ("name", Value::String(c.name.into())),
                ("passed", Value::Bool(c.passed)),
                ("detail", Value::String(c.detail.clone())),
            ])
        })
        .collect();
    env.payload = obj([
        ("suite", Value::String(suite.name().into())),
        ("passed", Value::Bool(rep.passed())),
        ("total", rep.checks.len().into()),
        ("failed", rep.failures().count().into()),
        ("checks", Value::Array(checks)),
    ]);
    if rep.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(parse_value("0.5").unwrap(), Scalar::Float(0.5));
        let r = parse_value("1/3").unwrap();
        assert_eq!(r, Scalar::Exact(BigRational::new(1.into(), 3.into())));
        assert_eq!(r.to_f64(), 1.0 / 3.0);
        assert!(parse_value("1/0").is_err());
        assert!(parse_value("x").is_err());
        assert_eq!(
            parse_value("3").unwrap(),
            Scalar::Exact(BigRational::from_integer(3.into()))
        );
        assert!(parse_params("1/2", "1/2").ok().unwrap().exact().is_some());
        assert!(parse_params("0.5", "1/2").ok().unwrap().exact().is_none());
        assert!(matches!(parse_params("-1", "1"), Err(CmdError::Domain(_))));
    }

    #[test]
    fn radii_increase() {
        let r = profile_radii(1e-3, 1e3, 512);
        assert_eq!(r.len(), 512);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }
}
