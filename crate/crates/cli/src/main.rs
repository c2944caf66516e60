//! sha-scope: exact invariants, division polynomials, torsion, traces,
//! lifting plans and exceptional primes for elliptic curves over Q.

mod identities;
mod json;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha_scope_core::arith::{factorize_with, BigRat, Effort};
use sha_scope_core::curves::{bad_primes_with, minimize_short_with, reduction_report, LongModel, ShortModel};
use sha_scope_core::divpoly::DivisionTable;
use sha_scope_core::ffcurve::reduce_curve;
use sha_scope_core::galoisrules::{theorem5_report_with, RuleConfig, DEFAULT_SCAN_BOUND};
use sha_scope_core::liftkit::{lift_plan, replay};
use sha_scope_core::numfield::{
    alpha_trace_direct, alpha_trace_step8, alpha_trace_step8_literal, check_bound, cor6_check,
    cor7_check, cor7_coefficient, Lambda,
};
use sha_scope_core::poly::format_poly;
use sha_scope_core::sym::format_sym_poly;
use sha_scope_core::torsionq::rational_torsion_with;
use sha_scope_core::Error;

use json::obj;

/// Above this many points `ffgroup` omits the full point list.
const POINT_LIST_LIMIT: u64 = 4096;

const EXIT_DOMAIN: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone)]
enum CurveInput {
    Short(ShortModel),
    Long(LongModel),
}

impl FromStr for CurveInput {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| format!("'{}' is not an integer", t.trim())))
            .collect::<Result<Vec<_>, _>>()?;
        match parts.as_slice() {
            [a, b] => Ok(CurveInput::Short(ShortModel { a: a.clone(), b: b.clone() })),
            [a1, a2, a3, a4, a6] => Ok(CurveInput::Long(LongModel {
                a1: a1.clone(),
                a2: a2.clone(),
                a3: a3.clone(),
                a4: a4.clone(),
                a6: a6.clone(),
            })),
            _ => Err(format!("expected 2 (A,B) or 5 (a1,a2,a3,a4,a6) integers, got {}", parts.len())),
        }
    }
}

#[derive(Parser)]
#[command(name = "sha-scope", version, about = "Exact arithmetic for elliptic curves over Q")]
struct Cli {
    /// "A,B" for y² = x³ + Ax + B, or "a1,a2,a3,a4,a6" for a long Weierstrass model
    #[arg(long, global = true, allow_hyphen_values = true)]
    curve: Option<CurveInput>,

    /// Pollard-rho iteration budget for factoring
    #[arg(long, global = true)]
    effort: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, discriminant factorization, short and minimized models
    Invariants,
    /// Reduction type at a prime
    Reduce {
        #[arg(long)]
        p: BigInt,
    },
    /// Reduction data at every bad prime
    BadPrimes,
    /// The division polynomial f_n
    Divpoly {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// over Z[A,B] instead of the given curve
        #[arg(long)]
        symbolic: bool,
    },
    /// Check the division-polynomial identities symbolically
    VerifyIdentities {
        #[arg(long, default_value_t = 24)]
        max_n: u32,
    },
    /// Group of the reduction mod p
    Ffgroup {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Rational torsion subgroup
    Torsion,
    /// Root sums of g_{ℓⁿ} and Φ_ℓ(X, λ)
    CorTraces {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        n: u32,
        /// rational λ; symbolic when omitted
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<BigRat>,
    },
    /// Normalized root sum of ℓ³Δ′/ψ over the roots of g_{ℓⁿ}
    AlphaTrace {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        n: u32,
        /// also evaluate the closed form through partial fractions
        #[arg(long)]
        step8: bool,
    },
    /// Lifting plan for the ℓ-part of the reduction mod p
    Lift {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Exceptional primes and the image verdict table
    Exceptional {
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        scan_bound: u64,
        /// also accept ℓ outside the Mazur list with a Tate witness
        #[arg(long)]
        mazur_chain: bool,
        /// largest ℓ listed in the verdict table
        #[arg(long, default_value_t = 100)]
        verdict_limit: u64,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Output document and exit status.
struct Done(Value, u8);

fn ok(v: Value) -> Result<Done, Failure> {
    Ok(Done(v, 0))
}

struct Ctx {
    curve: Option<CurveInput>,
    effort: Effort,
}

impl Ctx {
    fn input(&self) -> Result<&CurveInput, Failure> {
        self.curve.as_ref().ok_or_else(|| Failure::Usage("this subcommand needs --curve".into()))
    }

    /// The short model of the input, rejecting singular cubics.
    fn short(&self) -> Result<ShortModel, Failure> {
        let m = match self.input()? {
            CurveInput::Short(m) => m.clone(),
            CurveInput::Long(l) => l.to_short()?,
        };
        m.invariants()?;
        Ok(m)
    }
}

fn invariants(ctx: &Ctx) -> Result<Done, Failure> {
    let input = ctx.input()?;
    let (input_json, inv) = match input {
        CurveInput::Short(m) => (json::short(m), m.invariants()?),
        CurveInput::Long(l) => (json::long(l), l.invariants()?),
    };
    let short = ctx.short()?;
    let delta_f = factorize_with(&inv.delta, &ctx.effort)?;
    let (min, u) = minimize_short_with(&short, &ctx.effort)?;
    let dp_f = factorize_with(&min.delta_prime(), &ctx.effort)?;
    ok(obj(vec![
        ("input", input_json),
        ("invariants", json::invariants(&inv)),
        ("delta_factorization", json::factorization(&delta_f)),
        ("short_model", json::short(&short)),
        ("minimal_model", json::short(&min)),
        ("u", json::int(&u)),
        ("minimal_delta_prime", json::int(&min.delta_prime())),
        ("minimal_delta_prime_factorization", json::factorization(&dp_f)),
    ]))
}

fn divpoly(ctx: &Ctx, n: i64, symbolic: bool) -> Result<Done, Failure> {
    let (poly, degree, lc) = if symbolic {
        let f = DivisionTable::symbolic().f(n)?;
        (format_sym_poly(&f), f.degree(), f.degree().map(|_| json!(f.lc().to_string())))
    } else {
        let m = ctx.short()?;
        let f = DivisionTable::new(m.a.clone(), m.b.clone()).f(n)?;
        (format_poly(&f, "X"), f.degree(), f.degree().map(|_| json::int(&f.lc())))
    };
    let mut out = vec![
        ("n", json!(n)),
        ("symbolic", json!(symbolic)),
        ("poly", json!(poly)),
        ("degree", json!(degree)),
        ("leading_coefficient", lc.unwrap_or(Value::Null)),
    ];
    if !symbolic {
        out.push(("model", json::short(&ctx.short()?)));
    }
    ok(obj(out))
}

fn verify_identities(ctx: &Ctx, max_n: u32) -> Result<Done, Failure> {
    if max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    let extra = match &ctx.curve {
        Some(_) => Some(ctx.short()?),
        None => None,
    };
    let fams = identities::run(max_n, extra.as_ref())?;
    let all = fams.iter().all(|f| f.failed.is_empty());
    let doc = obj(vec![
        ("max_n", json!(max_n)),
        ("families", Value::Array(fams.iter().map(|f| f.to_json()).collect())),
        ("all_hold", json!(all)),
    ]);
    Ok(Done(doc, if all { 0 } else { EXIT_DOMAIN }))
}

fn ffgroup(ctx: &Ctx, p: u64, ell: Option<u64>) -> Result<Done, Failure> {
    let m = ctx.short()?;
    let c = reduce_curve(&m, p)?;
    let s = c.structure()?;
    let mut out = vec![
        ("p", json!(p)),
        ("curve", obj(vec![("A", json!(c.a)), ("B", json!(c.b))])),
        ("order", json!(s.order)),
        ("trace", json!(c.trace()?)),
        ("structure", json::structure(&s)),
        (
            "points",
            if s.order <= POINT_LIST_LIMIT { json::points(&c.points()?) } else { Value::Null },
        ),
    ];
    if let Some(l) = ell {
        out.push(("ell_primary", json::ell_primary(&c.ell_primary(l)?)));
    }
    ok(obj(out))
}

fn cor_traces(ctx: &Ctx, ell: u64, n: u32, lambda: Option<BigRat>) -> Result<Done, Failure> {
    let m = ctx.short()?;
    let g = DivisionTable::new(m.a.clone(), m.b.clone()).quotient_g(ell, n)?;
    let d = g.deg();
    let sub = if d > 0 { g.coeff(d - 1) } else { BigInt::from(0) };
    let cor7 = match lambda {
        None => obj(vec![
            ("lambda", json!("symbolic")),
            ("holds", json!(cor7_check(&m, ell, &Lambda::Symbolic)?)),
        ]),
        Some(l) => {
            let coeff = cor7_coefficient(&m, ell, &l)?;
            let want = -&l * BigRat::from_integer(BigInt::from(ell * ell));
            obj(vec![
                ("lambda", json::ratv(&l)),
                ("coefficient", json::ratv(&coeff)),
                ("expected", json::ratv(&want)),
                ("holds", json!(cor7_check(&m, ell, &Lambda::Value(l))?)),
            ])
        }
    };
    ok(obj(vec![
        ("model", json::short(&m)),
        ("ell", json!(ell)),
        ("n", json!(n)),
        ("g_degree", json!(d)),
        ("g_leading_coefficient", json::int(&g.lc())),
        ("g_subleading_coefficient", json::int(&sub)),
        ("root_sum_zero", json!(cor6_check(&m, ell, n)?)),
        ("phi", cor7),
    ]))
}

fn alpha_trace(ctx: &Ctx, ell: u64, n: u32, step8: bool) -> Result<Done, Failure> {
    let m = ctx.short()?;
    let r = alpha_trace_direct(&m, ell, n)?;
    let checks = check_bound(&m, &r)?;
    let mut out = vec![
        ("model", json::short(&m)),
        ("ell", json!(ell)),
        ("n", json!(n)),
        ("degree", json!(r.degree)),
        ("s", json::ratv(&r.s)),
        ("bound_checks", Value::Array(checks.iter().map(json::bound_check).collect())),
        ("bounds_hold", json!(checks.iter().all(|c| c.holds))),
    ];
    if step8 {
        let s8 = alpha_trace_step8(&m, ell)?;
        let lit = alpha_trace_step8_literal(&m, ell)?;
        out.push((
            "step8",
            obj(vec![
                ("s", json::ratv(&s8)),
                ("literal", json::ratv(&lit)),
                ("matches_direct", if n == 2 { json!(s8 == r.s) } else { Value::Null }),
            ]),
        ));
    }
    ok(obj(out))
}

fn lift(ctx: &Ctx, p: u64, ell: u64) -> Result<Done, Failure> {
    let m = ctx.short()?;
    let plan = lift_plan(&m, p, ell)?;
    let check = replay(&m, &plan)?;
    let mut doc = json::lift_plan(&plan);
    if let Value::Object(map) = &mut doc {
        map.insert("model".into(), json::short(&m));
        map.insert("replay".into(), json::replay(&check));
    }
    ok(doc)
}

fn exceptional(ctx: &Ctx, scan: u64, mazur: bool, limit: u64) -> Result<Done, Failure> {
    let m = ctx.short()?;
    let cfg = RuleConfig { mazur_chain: mazur, ..RuleConfig::default() };
    let r = theorem5_report_with(&m, scan, &cfg, &ctx.effort)?;
    let code = if r.is_complete() { 0 } else { EXIT_BUDGET };
    Ok(Done(json::report(&r, limit), code))
}

fn dispatch(cli: Cli) -> Result<Done, Failure> {
    let mut effort = Effort::default();
    if let Some(e) = cli.effort {
        effort.rho_iterations = e;
    }
    let ctx = Ctx { curve: cli.curve, effort };
    match cli.cmd {
        Cmd::Invariants => invariants(&ctx),
        Cmd::Reduce { p } => ok(json::reduction(&reduction_report(&ctx.short()?, &p)?)),
        Cmd::BadPrimes => {
            let m = ctx.short()?;
            let reps = bad_primes_with(&m, &ctx.effort)?;
            ok(obj(vec![
                ("model", json::short(&m)),
                ("bad_primes", Value::Array(reps.iter().map(json::reduction).collect())),
            ]))
        }
        Cmd::Divpoly { n, symbolic } => divpoly(&ctx, n, symbolic),
        Cmd::VerifyIdentities { max_n } => verify_identities(&ctx, max_n),
        Cmd::Ffgroup { p, ell } => ffgroup(&ctx, p, ell),
        Cmd::Torsion => ok(json::torsion(&rational_torsion_with(&ctx.short()?, &ctx.effort)?)),
        Cmd::CorTraces { ell, n, lambda } => cor_traces(&ctx, ell, n, lambda),
        Cmd::AlphaTrace { ell, n, step8 } => alpha_trace(&ctx, ell, n, step8),
        Cmd::Lift { p, ell } => lift(&ctx, p, ell),
        Cmd::Exceptional { scan_bound, mazur_chain, verdict_limit } => {
            exceptional(&ctx, scan_bound, mazur_chain, verdict_limit)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(Done(v, code)) => {
            println!("{v}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            println!("{}", json::error(&e));
            ExitCode::from(if e.is_budget() { EXIT_BUDGET } else { EXIT_DOMAIN })
        }
    }
}
