//! JSON encoders. Keys come out sorted (serde_json's default map is a
//! BTreeMap), integers beyond 2^53 become decimal strings, rationals are
//! "num/den" strings.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};
use sha_scope_core::arith::{BigRat, Factorization};
use sha_scope_core::curves::{
    Invariants, LongModel, Multiplicative, Potential, ReductionKind, ReductionReport, ShortModel,
};
use sha_scope_core::error::Error;
use sha_scope_core::ffcurve::{EllPrimary, FpPoint, GroupStructure};
use sha_scope_core::galoisrules::{ImageVerdict, Theorem5Report};
use sha_scope_core::liftkit::{LiftPlan, ReplayCheck};
use sha_scope_core::numfield::BoundCheck;
use sha_scope_core::poly::format_poly;
use sha_scope_core::torsionq::TorsionGroup;

const SAFE: u64 = 1 << 53;

pub fn int(n: &BigInt) -> Value {
    match n.abs().to_u64() {
        Some(m) if m <= SAFE => json!(n.to_i64().unwrap()),
        _ => Value::String(n.to_string()),
    }
}

pub fn ratv(q: &BigRat) -> Value {
    Value::String(q.to_string())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn short(m: &ShortModel) -> Value {
    obj(vec![("A", int(&m.a)), ("B", int(&m.b))])
}

pub fn long(m: &LongModel) -> Value {
    obj(vec![
        ("a1", int(&m.a1)),
        ("a2", int(&m.a2)),
        ("a3", int(&m.a3)),
        ("a4", int(&m.a4)),
        ("a6", int(&m.a6)),
    ])
}

pub fn invariants(i: &Invariants) -> Value {
    obj(vec![
        ("b2", int(&i.b2)),
        ("b4", int(&i.b4)),
        ("b6", int(&i.b6)),
        ("b8", int(&i.b8)),
        ("c4", int(&i.c4)),
        ("c6", int(&i.c6)),
        ("delta", int(&i.delta)),
        ("delta_prime", int(&i.delta_prime)),
        ("j", ratv(&i.j)),
    ])
}

/// "-1 * 2^8 * 3^2 * 37" style rendering.
pub fn factorization_text(f: &Factorization) -> String {
    let mut parts: Vec<String> = f
        .factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    if parts.is_empty() {
        parts.push("1".into());
    }
    if f.sign < 0 {
        parts.insert(0, "-1".into());
    }
    parts.join(" * ")
}

pub fn factorization(f: &Factorization) -> Value {
    obj(vec![
        ("sign", json!(f.sign)),
        (
            "factors",
            Value::Array(f.factors.iter().map(|(p, e)| json!([int(p), e])).collect()),
        ),
        ("certified", json!(f.certified)),
        ("text", json!(factorization_text(f))),
    ])
}

fn kind(k: ReductionKind) -> &'static str {
    match k {
        ReductionKind::Good => "good",
        ReductionKind::Multiplicative(Multiplicative::Split) => "split_multiplicative",
        ReductionKind::Multiplicative(Multiplicative::Nonsplit) => "nonsplit_multiplicative",
        ReductionKind::Multiplicative(Multiplicative::Undetermined) => "multiplicative",
        ReductionKind::Additive => "additive",
    }
}

pub fn reduction(r: &ReductionReport) -> Value {
    obj(vec![
        ("p", int(&r.p)),
        ("kind", json!(kind(r.kind))),
        (
            "potential",
            json!(match r.potential {
                Potential::PotentiallyGood => "potentially_good",
                Potential::PotentiallyMultiplicative => "potentially_multiplicative",
            }),
        ),
        ("ord_delta", json!(r.ord_delta)),
        ("ord_c4", json!(r.ord_c4)),
        ("ord_j", json!(r.ord_j)),
        ("rescalings", json!(r.rescalings)),
        ("caveat", json!(r.caveat)),
    ])
}

pub fn point(p: &FpPoint) -> Value {
    match p {
        FpPoint::Infinity => json!("O"),
        FpPoint::Affine(x, y) => json!([x, y]),
    }
}

pub fn points(ps: &[FpPoint]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub fn structure(s: &GroupStructure) -> Value {
    obj(vec![
        ("order", json!(s.order)),
        ("n1", json!(s.n1)),
        ("n2", json!(s.n2)),
        ("cyclic", json!(s.is_cyclic())),
        ("generators", points(&s.generators)),
    ])
}

pub fn ell_primary(e: &EllPrimary) -> Value {
    obj(vec![
        ("ell", json!(e.ell)),
        ("size", json!(e.size)),
        ("factors", json!([e.factors.0, e.factors.1])),
        ("cyclic", json!(e.cyclic)),
        ("generator", point(&e.generator)),
        (
            "points_by_order",
            Value::Array(
                e.points_by_order
                    .iter()
                    .map(|(o, ps)| obj(vec![("order", json!(o)), ("points", points(ps))]))
                    .collect(),
            ),
        ),
    ])
}

pub fn torsion(t: &TorsionGroup) -> Value {
    obj(vec![
        ("model", short(&t.model)),
        ("structure", json!(t.structure.to_string())),
        ("order", json!(t.structure.order())),
        (
            "points",
            Value::Array(
                t.points
                    .iter()
                    .map(|p| obj(vec![("x", int(&p.x)), ("y", int(&p.y)), ("order", json!(p.order))]))
                    .collect(),
            ),
        ),
    ])
}

pub fn bound_check(b: &BoundCheck) -> Value {
    obj(vec![
        ("q", int(&b.q)),
        ("abs_q", ratv(&b.abs_q)),
        ("bound", ratv(&b.bound)),
        ("holds", json!(b.holds)),
    ])
}

pub fn lift_plan(p: &LiftPlan) -> Value {
    let lift = match &p.lift {
        None => Value::Null,
        Some(l) => obj(vec![
            ("y_lift", int(&l.y_lift)),
            ("y_squared", ratv(&l.y_squared)),
            ("cubic", json!(format_poly(&l.cubic, "X"))),
            ("target_x", json!(l.target_x)),
            (
                "hensel",
                obj(vec![
                    ("anchor", int(&l.hensel.anchor)),
                    ("val_f", json!(l.hensel.val_f)),
                    ("val_df", json!(l.hensel.val_df)),
                    ("simple_mod_p", json!(l.hensel.simple_mod_p)),
                    ("holds", json!(l.hensel.holds())),
                ]),
            ),
        ]),
    };
    obj(vec![
        ("p", json!(p.p)),
        ("ell", json!(p.ell)),
        ("group_order", json!(p.group_order)),
        ("n", json!(p.n)),
        ("m", json!(p.m)),
        ("generator", point(&p.generator)),
        ("generator_order", json!(p.generator_order)),
        ("lift", lift),
        ("bezout", json!([int(&p.bezout.0), int(&p.bezout.1)])),
    ])
}

pub fn replay(r: &ReplayCheck) -> Value {
    obj(vec![
        ("points", json!(r.points)),
        ("decomposition_holds", json!(r.decomposition_holds)),
        ("m_multiples_in_ell_part", json!(r.m_multiples_in_ell_part)),
        ("generator_preimages", json!(r.generator_preimages)),
    ])
}

pub fn verdict(v: &ImageVerdict) -> Value {
    obj(vec![
        ("ell", json!(v.ell)),
        ("verdict", json!(v.verdict.to_string())),
        ("l_adic", json!(v.l_adic)),
        (
            "reasons",
            Value::Array(
                v.reasons
                    .iter()
                    .map(|r| {
                        obj(vec![
                            ("rule", json!(r.rule.id())),
                            ("holds", json!(r.holds)),
                            ("detail", json!(r.detail)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

/// The report with the verdict table cut at `verdict_limit`.
pub fn report(r: &Theorem5Report, verdict_limit: u64) -> Value {
    obj(vec![
        ("model", short(&r.model)),
        ("delta_prime", int(&r.delta_prime)),
        ("delta_prime_factorization", factorization(&r.delta_factorization)),
        ("bad_primes", Value::Array(r.reports.iter().map(reduction).collect())),
        ("exceptional_set", Value::Array(r.exceptional.iter().map(int).collect())),
        ("smallest_applicable", json!(r.smallest_applicable)),
        ("scan_bound", json!(r.scan_bound)),
        ("verdict_limit", json!(verdict_limit)),
        (
            "verdicts",
            Value::Array(r.verdicts.iter().filter(|v| v.ell <= verdict_limit).map(verdict).collect()),
        ),
        ("serre_bound", int(&r.serre_bound)),
        ("tail_certified", json!(r.tail_certified)),
        ("complete", json!(r.is_complete())),
        ("unfactored", r.unfactored.as_ref().map(int).unwrap_or(Value::Null)),
        ("notes", json!(r.notes)),
    ])
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Singular { .. } => "singular",
        Error::IncompleteFactorization { .. } => "incomplete_factorization",
        Error::Ceiling(_) => "ceiling",
        Error::BadReduction { .. } => "bad_reduction",
        Error::PointIsTorsion(_) => "point_is_torsion",
        Error::NotInvertible { .. } => "not_invertible",
        Error::Unsupported(_) => "unsupported",
        Error::Invariant(_) => "invariant",
    }
}

pub fn error(e: &Error) -> Value {
    let mut body = vec![("kind", json!(error_kind(e))), ("message", json!(e.to_string()))];
    match e {
        Error::IncompleteFactorization { cofactor, partial } => {
            body.push(("unfactored", int(cofactor)));
            body.push(("partial", factorization(partial)));
        }
        Error::BadReduction { report, .. } => body.push(("reduction", reduction(report))),
        _ => {}
    }
    obj(vec![("error", obj(body))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_switch_to_strings_past_2_53() {
        assert_eq!(int(&BigInt::from(SAFE)), json!(9007199254740992u64));
        assert_eq!(int(&-BigInt::from(SAFE)), json!(-9007199254740992i64));
        assert_eq!(int(&(BigInt::from(SAFE) + BigInt::from(1))), json!("9007199254740993"));
        assert_eq!(int(&-(BigInt::from(SAFE) + BigInt::from(1))), json!("-9007199254740993"));
    }

    #[test]
    fn keys_sorted() {
        let v = obj(vec![("z", json!(1)), ("a", json!(2))]);
        assert_eq!(v.to_string(), r#"{"a":2,"z":1}"#);
    }

    #[test]
    fn rationals_as_strings() {
        let q = BigRat::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(ratv(&q), json!("-3/2"));
    }
}
