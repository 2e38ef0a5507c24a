//! Command-line front end. [`run`] is pure: it returns the exit code, the
//! JSON payload and the diagnostics instead of printing them, so tests can
//! call it directly.
//!
//! Exit codes: 0 success, 1 nothing found / undecided / check failed,
//! 2 invalid input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::algebra::{hensel_lift, Field, FieldDescriptor, Form, FormSystem, PadicField, PrimeField, Rationals};
use crate::bounds::{self, Interval, PhiSource};
use crate::construct::{build_beta_subspace, run_pipeline, AssembleOptions, BetaOptions, PipelineOptions};
use crate::diagonal::{phi_estimate, solve_diagonal_system, DiagonalSearch, DiagonalSystem, SearchOptions};
use crate::error::{Error, Result};
use crate::rank::{self, EstimateOptions, RankReport};
use crate::taylor::taylor_expand;

/// Identifies the payload layout; bumped on incompatible changes.
pub const SCHEMA: &str = "forms-density/1";

/// Significant digits used when printing interval endpoints.
const DIGITS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// JSON document for standard output (empty when clap printed help).
    pub payload: String,
    /// Human-readable text for standard error.
    pub diagnostics: String,
}

#[derive(Parser, Debug)]
#[command(name = "forms-density", version, about = "Exact computations with systems of forms")]
struct Cli {
    /// Worker threads for parallel sections; never changes the payload.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format (only `json` is supported).
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound formulas and recursions.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Taylor components of a system on m blocks.
    Taylor {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        m: usize,
    },
    /// Birch rank of a system.
    Rank {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_count)]
        budget: Option<u64>,
    },
    /// Solvers.
    Solve {
        #[command(subcommand)]
        which: SolveCommand,
    },
    /// Constructions producing subspaces and points.
    Construct {
        #[command(subcommand)]
        which: ConstructCommand,
    },
    /// Estimate φ_d over a prime field.
    Phi {
        #[arg(long)]
        field: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_count, default_value = "1e6")]
        budget: u64,
    },
    /// Run every inequality check (same as `bounds verify`).
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct SystemInput {
    /// JSON file with `{"forms": [...]}`.
    #[arg(long)]
    system: PathBuf,
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    d: Option<u32>,
    /// A single value, or `s_d,…,s_1` for `main`.
    #[arg(long)]
    s: Option<String>,
    #[arg(long, default_value = "skinner")]
    phi: String,
    #[arg(long)]
    prec: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    d_max: u32,
    #[arg(long, default_value = "skinner")]
    phi: String,
    #[arg(long)]
    prec: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    Wooley(BoundArgs),
    Main(BoundArgs),
    Padic(BoundArgs),
    NSeq(BoundArgs),
    M(BoundArgs),
    Powers(BoundArgs),
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum SolveCommand {
    /// A point of a diagonal system.
    Diagonal {
        /// JSON file with `{"n": n, "rows": [...]}`.
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, value_parser = parse_count, default_value = "1e6")]
        budget: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Hensel lift of a simple root of an integer polynomial.
    Hensel {
        /// Coefficients `c_0,c_1,…` of `Σ c_i x^i`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Rational points on a system through a good subspace.
    Pipeline {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        m: usize,
        /// JSON form that the points must not annihilate.
        #[arg(long)]
        avoid: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_count, default_value = "1e5")]
        budget: u64,
    },
    /// Seven-dimensional good subspace of a diagonal system.
    Beta {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_count, default_value = "1e6")]
        budget: u64,
    },
}

/// Accepts `1000000`, `1e6` or `2.5e3`.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64) {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return CommandResult {
                exit_code: code,
                payload: String::new(),
                diagnostics: e.render().to_string(),
            };
        }
    };
    if cli.format != "json" {
        return failure("", &Error::Precondition(format!("unsupported format `{}`", cli.format)));
    }
    let name = command_name(&cli.command);
    let outcome = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::Precondition(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match outcome {
        Ok(out) => CommandResult {
            exit_code: if out.ok { 0 } else { 1 },
            payload: render(json!({"schema": SCHEMA, "command": name, "result": out.result})),
            diagnostics: out.summary,
        },
        Err(e) => failure(&name, &e),
    }
}

struct Outcome {
    result: Value,
    ok: bool,
    summary: String,
}

impl Outcome {
    fn ok(result: Value, summary: impl Into<String>) -> Self {
        Outcome {
            result,
            ok: true,
            summary: summary.into(),
        }
    }
}

fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn failure(name: &str, e: &Error) -> CommandResult {
    let code = if e.is_search_outcome() || matches!(e, Error::Violated(_)) {
        1
    } else {
        2
    };
    let mut err = json!({"kind": error_kind(e), "message": e.to_string()});
    if let Error::NotFound { stage } = e {
        err["stage"] = json!(stage);
    }
    CommandResult {
        exit_code: code,
        payload: render(json!({"schema": SCHEMA, "command": name, "error": err})),
        diagnostics: format!("error: {e}\n"),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Inhomogeneous { .. } => "inhomogeneous",
        Error::CharacteristicTooSmall { .. } => "characteristic-too-small",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::FieldMismatch(_) => "field-mismatch",
        Error::HenselCriterion { .. } => "hensel-criterion",
        Error::WrongDegree { .. } => "wrong-degree",
        Error::NotDiagonal => "not-diagonal",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::TooManyForms { .. } => "too-many-forms",
        Error::NotFound { .. } => "not-found",
        Error::Precondition(_) => "precondition",
        Error::Degenerate(_) => "degenerate",
        Error::DivisionByZero => "division-by-zero",
        Error::LinearlyDependent => "linearly-dependent",
        Error::Undecided { .. } => "undecided",
        Error::Violated(_) => "violated",
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Bounds { which } => format!(
            "bounds {}",
            match which {
                BoundsCommand::Wooley(_) => "wooley",
                BoundsCommand::Main(_) => "main",
                BoundsCommand::Padic(_) => "padic",
                BoundsCommand::NSeq(_) => "n-seq",
                BoundsCommand::M(_) => "m",
                BoundsCommand::Powers(_) => "powers",
                BoundsCommand::Verify(_) => "verify",
            }
        ),
        Command::Taylor { .. } => "taylor".into(),
        Command::Rank { .. } => "rank".into(),
        Command::Solve { which } => match which {
            SolveCommand::Diagonal { .. } => "solve diagonal".into(),
            SolveCommand::Hensel { .. } => "solve hensel".into(),
        },
        Command::Construct { which } => match which {
            ConstructCommand::Pipeline { .. } => "construct pipeline".into(),
            ConstructCommand::Beta { .. } => "construct beta".into(),
        },
        Command::Phi { .. } => "phi".into(),
        Command::Verify(_) => "verify".into(),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn field_of(s: &str) -> Result<FieldDescriptor> {
    s.parse()
}

/// Runs `$body` with `$k` bound to the concrete field named by `$desc`.
macro_rules! with_field {
    ($desc:expr, |$k:ident| $body:expr) => {
        match $desc {
            FieldDescriptor::Rationals => {
                let $k = Rationals;
                $body
            }
            FieldDescriptor::PrimeField { p } => {
                let $k = PrimeField::new(p)?;
                $body
            }
            FieldDescriptor::Padic { p, prec } => {
                let $k = PadicField::new(p, prec)?;
                $body
            }
        }
    };
}

fn dispatch(c: &Command) -> Result<Outcome> {
    match c {
        Command::Bounds { which } => bounds_command(which),
        Command::Verify(a) => verify_command(a),
        Command::Taylor { input, m } => {
            let desc = field_of(&input.field)?;
            let text = read(&input.system)?;
            with_field!(desc, |k| {
                let sys = FormSystem::from_json_str(&text, k)?;
                let t = taylor_expand(&sys, *m)?;
                Ok(Outcome::ok(
                    json!({"field": desc, "m": m, "components": t.to_json()}),
                    format!("{} components\n", t.len()),
                ))
            })
        }
        Command::Rank {
            input,
            method,
            seed,
            budget,
        } => rank_command(input, method, *seed, *budget),
        Command::Solve { which } => match which {
            SolveCommand::Diagonal {
                system,
                field,
                budget,
                seed,
            } => {
                let desc = field_of(field)?;
                let text = read(system)?;
                let opts = SearchOptions {
                    budget: *budget,
                    seed: *seed,
                };
                with_field!(desc, |k| solve_diagonal(&text, k, opts))
            }
            SolveCommand::Hensel { poly, x0, p, k } => {
                let coeffs = poly
                    .split(',')
                    .map(|t| t.trim().parse::<BigInt>().map_err(|e| Error::parse(format!("coefficient `{t}`: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                let x0: BigInt = x0.trim().parse().map_err(|e| Error::parse(format!("x0: {e}")))?;
                let x = hensel_lift(&coeffs, &x0, *p, *k)?;
                Ok(Outcome::ok(
                    json!({"p": p.to_string(), "k": k, "root": x.to_string()}),
                    format!("root {x} mod {p}^{k}\n"),
                ))
            }
        },
        Command::Construct { which } => match which {
            ConstructCommand::Pipeline {
                input,
                m,
                avoid,
                count,
                phi,
                seed,
                budget,
            } => {
                let desc = field_of(&input.field)?;
                let text = read(&input.system)?;
                let avoid = avoid.as_ref().map(read).transpose()?;
                let phis = match phi {
                    Some(p) => match PhiSource::parse(p)? {
                        PhiSource::List(v) => Some(v),
                        PhiSource::Skinner => None,
                    },
                    None => None,
                };
                let opts = PipelineOptions {
                    m: *m,
                    count: *count,
                    assemble: AssembleOptions {
                        phis,
                        search: SearchOptions {
                            budget: *budget,
                            seed: *seed,
                        },
                    },
                };
                with_field!(desc, |k| pipeline(&text, avoid.as_deref(), k, &opts))
            }
            ConstructCommand::Beta {
                system,
                field,
                phi,
                seed,
                budget,
            } => {
                let desc = field_of(field)?;
                let text = read(system)?;
                let PhiSource::List(phis) = PhiSource::parse(phi)? else {
                    return Err(Error::Precondition("construct beta needs explicit values: --phi list:…".into()));
                };
                let opts = BetaOptions::new(
                    phis,
                    SearchOptions {
                        budget: *budget,
                        seed: *seed,
                    },
                );
                with_field!(desc, |k| beta(&text, k, &opts))
            }
        },
        Command::Phi {
            field,
            d,
            n_max,
            trials,
            seed,
            budget,
        } => {
            let FieldDescriptor::PrimeField { p } = field_of(field)? else {
                return Err(Error::Precondition("phi estimation runs over prime fields only".into()));
            };
            let est = phi_estimate(
                PrimeField::new(p)?,
                *d,
                *n_max,
                *trials,
                SearchOptions {
                    budget: *budget,
                    seed: *seed,
                },
            )?;
            let summary = format!(
                "phi_{d}(F_{p}) = {}{}\n",
                est.value,
                if est.certified { "" } else { " (lower bound from samples)" }
            );
            Ok(Outcome::ok(serde_json::to_value(&est).expect("serializable"), summary))
        }
    }
}

fn solve_diagonal<F: DiagonalSearch>(text: &str, k: F, opts: SearchOptions) -> Result<Outcome> {
    let sys = DiagonalSystem::from_json_str(text, k.clone())?;
    let s = solve_diagonal_system(&sys, opts)?;
    match s.vector {
        Some(x) => {
            let values = sys.row_values(&x)?;
            Ok(Outcome::ok(
                json!({
                    "field": k.descriptor(),
                    "point": fmt_vec(&k, &x),
                    "candidates": s.candidates.to_string(),
                    "verification": {"row_values": fmt_vec(&k, &values), "ok": sys.is_solution(&x)?},
                }),
                format!("solution after {} candidates\n", s.candidates),
            ))
        }
        None if s.exhaustive => Err(Error::not_found(format!(
            "solve diagonal (exhaustive: none of {} candidates solves the system)",
            s.candidates
        ))),
        None => Err(Error::not_found(format!("solve diagonal ({} candidates)", s.candidates))),
    }
}

fn pipeline<F: DiagonalSearch>(text: &str, avoid: Option<&str>, k: F, opts: &PipelineOptions) -> Result<Outcome> {
    let sys = FormSystem::from_json_str(text, k.clone())?;
    let h = avoid.map(|a| Form::from_json_str(a, k.clone())).transpose()?;
    let r = run_pipeline(&sys, h.as_ref(), opts)?;
    let j = r.to_json(&k);
    Ok(Outcome::ok(
        json!({
            "field": k.descriptor(),
            "subspace": j.subspace.basis,
            "decomposition": j.subspace.decomposition,
            "configuration": j.configuration,
            "points": j.points,
            "verification": {"subspace": j.subspace.verification, "points": j.verification},
        }),
        format!("{} points verified\n", r.points.len()),
    ))
}

fn beta<F: DiagonalSearch>(text: &str, k: F, opts: &BetaOptions) -> Result<Outcome> {
    let sys = DiagonalSystem::from_json_str(text, k.clone())?;
    let b = build_beta_subspace(&sys, opts)?;
    let j = b.good.to_json();
    let ok = b.good.verification.passed();
    Ok(Outcome {
        result: json!({
            "field": k.descriptor(),
            "subspace": j.basis,
            "x": j.x,
            "y": j.y,
            "decomposition": j.decomposition,
            "trace": b.trace,
            "verification": j.verification,
        }),
        ok,
        summary: format!("7-dimensional subspace{}\n", if ok { " verified" } else { " FAILED verification" }),
    })
}

fn fmt_vec<F: Field>(k: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|c| k.format_elem(c)).collect()
}

fn rank_command(input: &SystemInput, method: &str, seed: Option<u64>, budget: Option<u64>) -> Result<Outcome> {
    let desc = field_of(&input.field)?;
    let text = read(&input.system)?;
    let report: RankReport = match method {
        "quadratic" | "diagonal" => with_field!(desc, |k| {
            let sys = FormSystem::from_json_str(&text, k)?;
            let [f] = sys.forms() else {
                return Err(Error::Precondition(format!("--method {method} takes a single form")));
            };
            if method == "quadratic" {
                rank::birch_rank_quadratic(f)?
            } else {
                rank::birch_rank_diagonal(f)?
            }
        }),
        "count" => count_rank(&desc, &text, seed, budget)?,
        "auto" => {
            let exact = with_field!(desc, |k| {
                let sys = FormSystem::from_json_str(&text, k)?;
                match sys.forms() {
                    [f] if f.degree() == 2 => Some(rank::birch_rank_quadratic(f)?),
                    [f] if f.is_diagonal() => Some(rank::birch_rank_diagonal(f)?),
                    _ => None,
                }
            });
            match exact {
                Some(r) => r,
                None => count_rank(&desc, &text, seed, budget)?,
            }
        }
        other => return Err(Error::Precondition(format!("unknown method `{other}`"))),
    };
    let summary = format!("Birch rank {:?} ({:?})\n", report.value, report.method);
    Ok(Outcome::ok(
        json!({"field": desc, "report": report}),
        summary,
    ))
}

fn count_rank(desc: &FieldDescriptor, text: &str, seed: Option<u64>, budget: Option<u64>) -> Result<RankReport> {
    let FieldDescriptor::PrimeField { p } = *desc else {
        return Err(Error::Precondition("point counting needs --field Fp:<p>".into()));
    };
    let seed = seed.ok_or_else(|| Error::Precondition("point counting may sample; --seed is required".into()))?;
    let sys = FormSystem::from_json_str(text, PrimeField::new(p)?)?;
    let mut opts = EstimateOptions {
        seed,
        ..Default::default()
    };
    if let Some(b) = budget {
        opts.point_budget = b;
    }
    rank::birch_rank_estimate(&sys, opts)
}

fn interval_json(i: &Interval) -> Value {
    let (lo, hi) = i.to_decimal_pair(DIGITS);
    json!([lo, hi])
}

fn uints(v: &[BigUint]) -> Vec<String> {
    v.iter().map(BigUint::to_string).collect()
}

fn parse_uints(s: &str) -> Result<Vec<BigUint>> {
    s.split(',')
        .map(|t| t.trim().parse::<BigUint>().map_err(|e| Error::parse(format!("`{t}`: {e}"))))
        .collect()
}

fn need_d(a: &BoundArgs) -> Result<u32> {
    a.d.ok_or_else(|| Error::Precondition("--d is required".into()))
}

fn single_s(a: &BoundArgs) -> Result<BigUint> {
    let s = a.s.as_deref().ok_or_else(|| Error::Precondition("--s is required".into()))?;
    match parse_uints(s)?.as_slice() {
        [v] => Ok(v.clone()),
        _ => Err(Error::Precondition("--s takes a single value here".into())),
    }
}

fn prec_of(p: Option<u32>) -> u32 {
    p.unwrap_or_else(bounds::default_precision)
}

/// An exact integer when it fits, else an enclosure.
fn exact_or_interval(exact: Result<BigUint>, interval: impl FnOnce() -> Result<Interval>) -> Result<Value> {
    match exact {
        Ok(v) => Ok(json!({"exact": v.to_string()})),
        Err(Error::Precondition(msg)) if msg.contains("interval form") => {
            Ok(json!({"interval": interval_json(&interval()?)}))
        }
        Err(e) => Err(e),
    }
}

fn bounds_command(which: &BoundsCommand) -> Result<Outcome> {
    match which {
        BoundsCommand::Verify(a) => verify_command(a),
        BoundsCommand::NSeq(a) => {
            let d = need_d(a)?;
            let phis = PhiSource::parse(&a.phi)?.values(d)?;
            let seq = bounds::n_sequence(d, &phis)?;
            let summary = format!("n_0..n_{d} = {}\n", uints(&seq).join(", "));
            Ok(Outcome::ok(json!(uints(&seq)), summary))
        }
        BoundsCommand::M(a) => {
            let d = need_d(a)?;
            let phis = PhiSource::parse(&a.phi)?.values(d)?;
            let m = bounds::m_vector(d, &phis)?;
            let summary = format!("m_2..m_{d} = {}\n", uints(&m).join(", "));
            Ok(Outcome::ok(json!({"m": uints(&m), "beta_replaced_by_n": true}), summary))
        }
        BoundsCommand::Wooley(a) => {
            let d = need_d(a)?;
            let s = single_s(a)?;
            let phis = PhiSource::parse(&a.phi)?.values(d)?;
            let prec = prec_of(a.prec);
            let v = exact_or_interval(bounds::wooley_bound(d, &s, &phis), || {
                bounds::wooley_bound_interval(d, &s, &phis, prec)
            })?;
            Ok(Outcome::ok(json!({"d": d, "s": s.to_string(), "phi": a.phi, "value": v}), ""))
        }
        BoundsCommand::Powers(a) => {
            let d = need_d(a)?;
            let s = single_s(a)?;
            let phis = PhiSource::parse(&a.phi)?.values(d)?;
            let m = bounds::m_vector(d, &phis)?;
            let prec = prec_of(a.prec);
            let v = exact_or_interval(bounds::powers_bound(d, &s, &m), || {
                bounds::powers_bound_interval(d, &s, &m, prec)
            })?;
            Ok(Outcome::ok(
                json!({"d": d, "s": s.to_string(), "phi": a.phi, "m": uints(&m), "value": v}),
                "",
            ))
        }
        BoundsCommand::Main(a) => {
            let raw = parse_uints(a.s.as_deref().ok_or_else(|| Error::Precondition("--s is required".into()))?)?;
            let s_desc = match (a.d, raw.len()) {
                (Some(d), 1) => {
                    let mut v = vec![BigUint::from(0u32); d as usize];
                    v[0] = raw[0].clone();
                    v
                }
                (Some(d), l) if l != d as usize => {
                    return Err(Error::DimensionMismatch {
                        expected: d as usize,
                        found: l,
                    })
                }
                _ => raw,
            };
            let d = s_desc.len() as u32;
            let phis = PhiSource::parse(&a.phi)?.values(d)?;
            let prec = prec_of(a.prec);
            let b = bounds::main_bound(&s_desc, &phis, prec)?;
            Ok(Outcome::ok(
                json!({"d": d, "s": uints(&s_desc), "phi": a.phi, "precision": prec, "interval": interval_json(&b)}),
                format!("B = {b}\n"),
            ))
        }
        BoundsCommand::Padic(a) => {
            let d = need_d(a)?;
            let s = single_s(a)?;
            let prec = prec_of(a.prec);
            let b = bounds::padic_bound(d, &s, prec)?;
            Ok(Outcome::ok(
                json!({"d": d, "s": s.to_string(), "precision": prec, "interval": interval_json(&b)}),
                format!("B_p = {b}\n"),
            ))
        }
    }
}

fn verify_command(a: &VerifyArgs) -> Result<Outcome> {
    let phis = PhiSource::parse(&a.phi)?;
    let r = bounds::verify_inequalities(a.d_max, &phis, a.prec)?;
    let mut summary = String::new();
    for c in &r.checks {
        summary.push_str(&format!(
            "{} {} ({} instances)\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.instances
        ));
    }
    Ok(Outcome {
        ok: r.all_passed,
        result: serde_json::to_value(&r).expect("serializable"),
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["forms-density"];
        argv.extend_from_slice(args);
        let r = run(argv);
        let v = if r.payload.is_empty() {
            Value::Null
        } else {
            serde_json::from_str(&r.payload).unwrap()
        };
        (r.exit_code, v)
    }

    #[test]
    fn n_sequence_payload() {
        let (code, v) = result(&["bounds", "n-seq", "--d", "3", "--phi", "list:4,72"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"], json!(["2", "4", "60", "9960"]));
    }

    #[test]
    fn unknown_subcommand_is_invalid_input() {
        assert_eq!(result(&["frobnicate"]).0, 2);
    }

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("250"), Ok(250));
        assert!(parse_count("1.5").is_err());
    }

    #[test]
    fn small_bounds() {
        let (code, v) = result(&["bounds", "wooley", "--d", "2", "--s", "1", "--phi", "list:4"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["value"]["exact"], "8");
        let (code, v) = result(&["bounds", "m", "--d", "2", "--phi", "list:4"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["m"], json!(["13"]));
    }
}
