//! Weierstrass models, their invariants, short-form conversion,
//! minimization and per-prime reduction type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize_with, is_probable_prime, BigRat, Effort};
use crate::error::{domain, Error, Result, Singularity};

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongModel {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

/// y² = x³ + A·x + B
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortModel {
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Long(LongModel),
    Short(ShortModel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub delta: BigInt,
    /// 4A³ + 27B² of the short model; for a long model, of its short form
    /// (A, B) = (−27c4, −54c6), which equals −6¹²Δ/16.
    pub delta_prime: BigInt,
    pub j: BigRat,
}

impl LongModel {
    pub fn new(a: [i64; 5]) -> LongModel {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        LongModel { a1, a2, a3, a4, a6 }
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + BigInt::from(4) * a2;
        let b4 = BigInt::from(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + BigInt::from(4) * a6;
        let b8 = a1 * a1 * a6 + BigInt::from(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - BigInt::from(24) * &b4;
        let b2_cubed: BigInt = &b2 * &b2 * &b2;
        let c6 = BigInt::from(36) * &b2 * &b4 - BigInt::from(216) * &b6 - b2_cubed;
        let b2sq_b8: BigInt = &b2 * &b2 * &b8;
        let delta = -b2sq_b8 - BigInt::from(8) * &b4 * &b4 * &b4 - BigInt::from(27) * &b6 * &b6 + BigInt::from(9) * &b2 * &b4 * &b6;
        if delta.is_zero() {
            let kind = if c4.is_zero() { Singularity::Cusp } else { Singularity::Node };
            return Err(Error::Singular { kind, c4 });
        }
        let j = BigRat::new(&c4 * &c4 * &c4, delta.clone());
        let delta_prime = -(&delta * BigInt::from(136_048_896u64));
        Ok(Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
            delta_prime,
            j,
        })
    }

    /// (A, B) = (−27c4, −54c6).
    pub fn to_short(&self) -> Result<ShortModel> {
        let inv = self.invariants()?;
        Ok(ShortModel {
            a: BigInt::from(-27) * inv.c4,
            b: BigInt::from(-54) * inv.c6,
        })
    }
}

impl ShortModel {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> ShortModel {
        ShortModel {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn delta_prime(&self) -> BigInt {
        BigInt::from(4) * &self.a * &self.a * &self.a + BigInt::from(27) * &self.b * &self.b
    }

    pub fn as_long(&self) -> LongModel {
        LongModel {
            a1: BigInt::zero(),
            a2: BigInt::zero(),
            a3: BigInt::zero(),
            a4: self.a.clone(),
            a6: self.b.clone(),
        }
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let mut inv = self.as_long().invariants()?;
        inv.delta_prime = self.delta_prime();
        Ok(inv)
    }

    /// (A/u⁴, B/u⁶); caller guarantees divisibility.
    pub fn scaled_down(&self, u: &BigInt) -> ShortModel {
        let u2 = u * u;
        let u4 = &u2 * &u2;
        ShortModel {
            a: &self.a / &u4,
            b: &self.b / (&u4 * &u2),
        }
    }

    /// (u⁴A, u⁶B).
    pub fn scaled_up(&self, u: &BigInt) -> ShortModel {
        let u2 = u * u;
        let u4 = &u2 * &u2;
        ShortModel {
            a: &self.a * &u4,
            b: &self.b * (&u4 * &u2),
        }
    }
}

impl Model {
    pub fn invariants(&self) -> Result<Invariants> {
        match self {
            Model::Long(m) => m.invariants(),
            Model::Short(m) => m.invariants(),
        }
    }

    /// Short form by the −27c4/−54c6 path, for both kinds of input.
    pub fn to_short(&self) -> Result<ShortModel> {
        match self {
            Model::Long(m) => m.to_short(),
            Model::Short(m) => m.as_long().to_short(),
        }
    }
}

pub fn minimize_short(m: &ShortModel) -> Result<(ShortModel, BigInt)> {
    minimize_short_with(m, &Effort::default())
}

/// Largest u with u⁴ | A and u⁶ | B, and the model (A/u⁴, B/u⁶).
pub fn minimize_short_with(m: &ShortModel, effort: &Effort) -> Result<(ShortModel, BigInt)> {
    let g = m.a.gcd(&m.b);
    if g.is_zero() {
        return Err(Error::Singular {
            kind: Singularity::Cusp,
            c4: BigInt::zero(),
        });
    }
    let f = factorize_with(&g, effort)?;
    let mut u = BigInt::one();
    for (p, _) in &f.factors {
        let ea = if m.a.is_zero() { u32::MAX } else { crate::arith::val_nonzero(&m.a, p) / 4 };
        let eb = if m.b.is_zero() { u32::MAX } else { crate::arith::val_nonzero(&m.b, p) / 6 };
        let e = ea.min(eb);
        u *= num_traits::pow(p.clone(), e as usize);
    }
    Ok((m.scaled_down(&u), u))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicative {
    Split,
    Nonsplit,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Good,
    Multiplicative(Multiplicative),
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    PotentiallyGood,
    PotentiallyMultiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub p: BigInt,
    pub kind: ReductionKind,
    pub potential: Potential,
    /// ord_p of the minimal discriminant
    pub ord_delta: u32,
    /// None when c4 = 0
    pub ord_c4: Option<u32>,
    /// None when j = 0
    pub ord_j: Option<i64>,
    /// number of rescalings by p applied to reach a p-minimal model
    pub rescalings: u32,
    pub caveat: Option<String>,
}

impl ReductionReport {
    pub fn is_bad(&self) -> bool {
        self.kind != ReductionKind::Good
    }

    pub fn p_u64(&self) -> Option<u64> {
        self.p.to_u64()
    }
}

pub const SMALL_PRIME_CAVEAT: &str = "minimal valuations at this prime come from Kraus integrality conditions on (c4, c6); split/nonsplit is not determined; potential type via ord_p(j) is authoritative";

fn v(n: &BigInt, p: &BigInt) -> Option<u32> {
    (!n.is_zero()).then(|| crate::arith::val_nonzero(n, p))
}

/// Whether (c4, c6) are the invariants of a model integral at p ∈ {2, 3}.
fn kraus_local(c4: &BigInt, c6: &BigInt, p: u32) -> bool {
    let pb = BigInt::from(p);
    let disc = c4 * c4 * c4 - c6 * c6;
    let need = if p == 2 { 6 } else { 3 };
    if v(&disc, &pb).is_some_and(|e| e < need) {
        return false;
    }
    if p == 3 {
        return v(c6, &pb) != Some(2);
    }
    let m4 = c6.mod_floor(&BigInt::from(4));
    if m4 == BigInt::from(3) {
        return true;
    }
    let c4_ok = v(c4, &pb).is_none_or(|e| e >= 4);
    let m32 = c6.mod_floor(&BigInt::from(32));
    c4_ok && (m32.is_zero() || m32 == BigInt::from(8))
}

pub fn reduction_report(m: &ShortModel, p: &BigInt) -> Result<ReductionReport> {
    if !is_probable_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if m.delta_prime().is_zero() {
        return Err(Error::Singular {
            kind: if m.a.is_zero() { Singularity::Cusp } else { Singularity::Node },
            c4: BigInt::from(-48) * &m.a,
        });
    }
    if p <= &BigInt::from(3) {
        return Ok(report_small(m, p.to_u32().unwrap()));
    }
    let p4 = num_traits::pow(p.clone(), 4);
    let p6 = num_traits::pow(p.clone(), 6);
    let mut m = m.clone();
    let mut rescalings = 0;
    while m.a.is_multiple_of(&p4) && m.b.is_multiple_of(&p6) {
        m = m.scaled_down(p);
        rescalings += 1;
    }
    let ord_delta = v(&m.delta_prime(), p).unwrap();
    let ord_c4 = v(&m.a, p);
    let ord_j = ord_c4.map(|e| 3 * e as i64 - ord_delta as i64);
    let kind = if ord_delta == 0 {
        ReductionKind::Good
    } else if ord_c4 == Some(0) {
        ReductionKind::Multiplicative(split_type(&m, p))
    } else {
        ReductionKind::Additive
    };
    Ok(ReductionReport {
        p: p.clone(),
        kind,
        potential: potential(ord_j),
        ord_delta,
        ord_c4,
        ord_j,
        rescalings,
        caveat: None,
    })
}

fn potential(ord_j: Option<i64>) -> Potential {
    match ord_j {
        Some(e) if e < 0 => Potential::PotentiallyMultiplicative,
        _ => Potential::PotentiallyGood,
    }
}

/// The node sits at x0 = −3B/(2A); its tangents are y = ±√(3x0)(x − x0).
fn split_type(m: &ShortModel, p: &BigInt) -> Multiplicative {
    let two_a = (BigInt::from(2) * &m.a).mod_floor(p);
    let inv = two_a.modpow(&(p - 2u32), p);
    let x0 = (BigInt::from(-3) * &m.b * inv).mod_floor(p);
    let s = (BigInt::from(3) * x0).mod_floor(p);
    let e = (p - 1u32) / 2u32;
    if s.modpow(&e, p).is_one() {
        Multiplicative::Split
    } else {
        Multiplicative::Nonsplit
    }
}

fn report_small(m: &ShortModel, p: u32) -> ReductionReport {
    let pb = BigInt::from(p);
    let mut c4 = BigInt::from(-48) * &m.a;
    let mut c6 = BigInt::from(-864) * &m.b;
    let mut delta = BigInt::from(-16) * m.delta_prime();
    let p4 = BigInt::from(p.pow(4));
    let p6 = BigInt::from(p.pow(6));
    let p12 = &p6 * &p6;
    let mut rescalings = 0;
    while c4.is_multiple_of(&p4) && c6.is_multiple_of(&p6) && delta.is_multiple_of(&p12) {
        let (n4, n6) = (&c4 / &p4, &c6 / &p6);
        if !kraus_local(&n4, &n6, p) {
            break;
        }
        c4 = n4;
        c6 = n6;
        delta = &delta / &p12;
        rescalings += 1;
    }
    let ord_delta = v(&delta, &pb).unwrap();
    let ord_c4 = v(&c4, &pb);
    let ord_j = ord_c4.map(|e| 3 * e as i64 - ord_delta as i64);
    let kind = if ord_delta == 0 {
        ReductionKind::Good
    } else if ord_c4 == Some(0) {
        ReductionKind::Multiplicative(Multiplicative::Undetermined)
    } else {
        ReductionKind::Additive
    };
    ReductionReport {
        p: pb,
        kind,
        potential: potential(ord_j),
        ord_delta,
        ord_c4,
        ord_j,
        rescalings,
        caveat: Some(SMALL_PRIME_CAVEAT.to_string()),
    }
}

pub fn bad_primes(m: &ShortModel) -> Result<Vec<ReductionReport>> {
    bad_primes_with(m, &Effort::default())
}

/// Reports for the primes of bad reduction of the minimized model, ascending.
pub fn bad_primes_with(m: &ShortModel, effort: &Effort) -> Result<Vec<ReductionReport>> {
    let (mm, _) = minimize_short_with(m, effort)?;
    let d = mm.delta_prime();
    if d.is_zero() {
        return Err(Error::Singular {
            kind: if mm.a.is_zero() { Singularity::Cusp } else { Singularity::Node },
            c4: BigInt::from(-48) * &mm.a,
        });
    }
    let f = factorize_with(&d, effort)?;
    let mut primes: Vec<BigInt> = vec![BigInt::from(2), BigInt::from(3)];
    for q in f.primes() {
        if !primes.contains(&q) {
            primes.push(q);
        }
    }
    primes.sort();
    let mut out = Vec::new();
    for p in primes {
        let r = reduction_report(&mm, &p)?;
        if r.is_bad() {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::arith::val;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    fn pw(b: i64, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(b), e as usize)
    }

    pub(crate) fn curve_2_23_long() -> LongModel {
        LongModel::new([1, -1, 0, -332311, -73733731])
    }

    fn product_curve_long() -> LongModel {
        LongModel {
            a1: BigInt::zero(),
            a2: big("1692602"),
            a3: BigInt::zero(),
            a4: big("-530052723915"),
            a6: BigInt::zero(),
        }
    }

    #[test]
    fn curve_2_23_invariants() {
        let inv = curve_2_23_long().invariants().unwrap();
        assert_eq!(inv.delta, big("-5302593435347072"));
        assert_eq!(inv.delta, -pw(2, 7) * pw(23, 10));
        assert_eq!(inv.c4, big("15950937"));
        assert_eq!(&inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6, BigInt::from(1728) * &inv.delta);
    }

    #[test]
    fn curve_2_23_short_and_minimal() {
        let s = curve_2_23_long().to_short().unwrap();
        assert_eq!(s, ShortModel::new(big("-430675299"), big("-3443997030498")));
        assert_eq!(s.a, -pw(3, 4) * BigInt::from(19) * pw(23, 4));
        let (m, u) = minimize_short(&s).unwrap();
        assert_eq!(m, ShortModel::new(big("-5316979"), big("-4724275762")));
        assert_eq!(u, BigInt::from(3));
        assert_eq!(m.delta_prime(), pw(2, 15) * pw(23, 10));
        let (m2, u2) = minimize_short(&m).unwrap();
        assert_eq!((m2, u2), (m.clone(), BigInt::one()));
    }

    #[test]
    fn minimize_by_fifteen() {
        let a = -pw(2, 4) * BigInt::from(19) * pw(23, 4);
        let b = BigInt::from(-2) * pw(23, 5) * BigInt::from(367);
        let m = ShortModel::new(a.clone(), b.clone());
        let big_model = m.scaled_up(&BigInt::from(15));
        assert_eq!(big_model.a, &a * pw(3, 4) * pw(5, 4));
        let (r, u) = minimize_short(&big_model).unwrap();
        assert_eq!(r, m);
        assert_eq!(u, BigInt::from(15));
    }

    #[test]
    fn product_curve_invariants() {
        let (a, b) = (big("1692602"), big("-530052723915"));
        let inv = product_curve_long().invariants().unwrap();
        assert_eq!(inv.delta, BigInt::from(16) * &b * &b * (&a * &a - BigInt::from(4) * &b));
        let s = product_curve_long().to_short().unwrap();
        assert_eq!(s.a, BigInt::from(-27) * (BigInt::from(16) * &a * &a - BigInt::from(48) * &b));
        assert_eq!(s.b, BigInt::from(-54) * (BigInt::from(-64) * &a * &a * &a + BigInt::from(288) * &a * &b));
    }

    #[test]
    fn singular() {
        match ShortModel::new(0, 0).invariants() {
            Err(Error::Singular { kind, .. }) => assert_eq!(kind, Singularity::Cusp),
            other => panic!("{other:?}"),
        }
        // y² = x³ − 3x + 2 = (x−1)²(x+2)
        match ShortModel::new(-3, 2).invariants() {
            Err(Error::Singular { kind, .. }) => assert_eq!(kind, Singularity::Node),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn short_relations() {
        let m = ShortModel::new(-5316979, big("-4724275762"));
        let inv = m.invariants().unwrap();
        assert_eq!(inv.delta, BigInt::from(-16) * &inv.delta_prime);
        assert_eq!(inv.c4, BigInt::from(-48) * &m.a);
        assert_eq!(inv.c6, BigInt::from(-864) * &m.b);
        let s = Model::Short(m.clone()).to_short().unwrap();
        assert_eq!(s, m.scaled_up(&BigInt::from(6)));
        assert_eq!(s.invariants().unwrap().j, inv.j);
    }

    #[test]
    fn reduction_curve_2_23() {
        let m = ShortModel::new(-5316979, big("-4724275762"));
        let r = reduction_report(&m, &BigInt::from(23)).unwrap();
        assert_eq!(r.kind, ReductionKind::Additive);
        assert_eq!((r.ord_delta, r.ord_c4, r.ord_j), (10, Some(4), Some(2)));
        assert_eq!(r.potential, Potential::PotentiallyGood);
        let r = reduction_report(&m, &BigInt::from(7)).unwrap();
        assert_eq!(r.kind, ReductionKind::Good);
        assert_eq!(r.ord_delta, 0);
        let r = reduction_report(&m, &BigInt::from(2)).unwrap();
        assert_eq!(r.ord_delta, 7);
        assert_eq!(r.ord_j, Some(-7));
        assert_eq!(r.kind, ReductionKind::Multiplicative(Multiplicative::Undetermined));
        assert!(r.caveat.is_some());
        let bad: Vec<BigInt> = bad_primes(&m).unwrap().into_iter().map(|r| r.p).collect();
        assert_eq!(bad, vec![BigInt::from(2), BigInt::from(23)]);
    }

    #[test]
    fn reduction_product_curve() {
        let s = product_curve_long().to_short().unwrap();
        let r = reduction_report(&s, &BigInt::from(3)).unwrap();
        assert_eq!(r.potential, Potential::PotentiallyMultiplicative);
        assert_eq!(r.ord_j, Some(-2));
        let r = reduction_report(&s, &BigInt::from(2)).unwrap();
        assert_eq!(r.ord_delta, 8);
        assert_eq!(r.kind, ReductionKind::Additive);
        let bad: Vec<String> = bad_primes(&s).unwrap().iter().map(|r| r.p.to_string()).collect();
        assert_eq!(
            bad,
            ["2", "3", "5", "11", "13", "17", "19", "23", "29", "31", "37", "8420798017"]
        );
    }

    #[test]
    fn reduction_minus_x() {
        let bad: Vec<BigInt> = bad_primes(&ShortModel::new(-1, 0)).unwrap().into_iter().map(|r| r.p).collect();
        assert_eq!(bad, vec![BigInt::from(2)]);
    }

    #[test]
    fn split_and_nonsplit() {
        // 11a1 = [0,-1,1,-10,-20] has split multiplicative reduction at 11
        let s = LongModel::new([0, -1, 1, -10, -20]).to_short().unwrap();
        let (m, _) = minimize_short(&s).unwrap();
        let r = reduction_report(&m, &BigInt::from(11)).unwrap();
        assert_eq!(r.kind, ReductionKind::Multiplicative(Multiplicative::Split));
        assert_eq!(r.ord_delta, 5);
        // 14a1 = [1,0,1,4,-6]: split at 7 (a_7 = 1)
        let s = LongModel::new([1, 0, 1, 4, -6]).to_short().unwrap();
        let r = reduction_report(&s, &BigInt::from(7)).unwrap();
        assert_eq!(r.kind, ReductionKind::Multiplicative(Multiplicative::Split));
        // 15a1 = [1,1,1,-10,-10]: split at 5 (a_5 = 1)
        let s = LongModel::new([1, 1, 1, -10, -10]).to_short().unwrap();
        let r = reduction_report(&s, &BigInt::from(5)).unwrap();
        assert_eq!(r.kind, ReductionKind::Multiplicative(Multiplicative::Split));
        // and 11a1 at 2 is good once minimal
        let r = reduction_report(&m, &BigInt::from(2)).unwrap();
        assert_eq!(r.kind, ReductionKind::Good);
        let r = reduction_report(&m, &BigInt::from(3)).unwrap();
        assert_eq!(r.kind, ReductionKind::Good);
    }

    #[test]
    fn known_minimal_discriminants() {
        // (long model, minimal discriminant) pairs for small conductors
        let cases: [([i64; 5], i64); 5] = [
            ([0, -1, 1, -10, -20], -161051),
            ([1, 0, 1, 4, -6], -21952),
            ([1, 1, 1, -10, -10], 50625),
            ([0, 0, 0, -1, 0], 64),
            ([0, 0, 1, -1, 0], 37),
        ];
        for (a, disc) in cases {
            let s = LongModel::new(a).to_short().unwrap();
            let (m, _) = minimize_short(&s).unwrap();
            for p in [2u32, 3] {
                let r = reduction_report(&m, &BigInt::from(p)).unwrap();
                let expect = val(&BigInt::from(disc), p as u64).unwrap();
                assert_eq!(r.ord_delta, expect, "{a:?} at {p}");
            }
        }
    }

    // a_p = p + 1 − #(all points of the singular reduction) is 1 if split, −1 if not
    fn brute_ap(a: i64, b: i64, p: i64) -> i64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y - x * x * x - a * x - b).rem_euclid(p) == 0 {
                    n += 1;
                }
            }
        }
        p + 1 - n
    }

    #[test]
    fn split_matches_point_count() {
        let mut seen = [0, 0];
        for a in -40i64..40 {
            for b in -40i64..40 {
                let m = ShortModel::new(a, b);
                if m.delta_prime().is_zero() {
                    continue;
                }
                for p in [5i64, 7, 11, 13] {
                    let r = reduction_report(&m, &BigInt::from(p)).unwrap();
                    if let ReductionKind::Multiplicative(t) = r.kind {
                        assert_eq!(r.rescalings, 0);
                        let ap = brute_ap(a, b, p);
                        match t {
                            Multiplicative::Split => {
                                assert_eq!(ap, 1);
                                seen[0] += 1;
                            }
                            Multiplicative::Nonsplit => {
                                assert_eq!(ap, -1);
                                seen[1] += 1;
                            }
                            Multiplicative::Undetermined => panic!(),
                        }
                    }
                }
            }
        }
        assert!(seen[0] > 100 && seen[1] > 100);
    }

    proptest! {
        #[test]
        fn invariant_identities(a1 in -20i64..20, a2 in -20i64..20, a3 in -20i64..20, a4 in -500i64..500, a6 in -500i64..500) {
            let m = LongModel::new([a1, a2, a3, a4, a6]);
            if let Ok(inv) = m.invariants() {
                prop_assert_eq!(&inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6, BigInt::from(1728) * &inv.delta);
                prop_assert_eq!(BigInt::from(4) * &inv.b8, &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4);
                let s = m.to_short().unwrap();
                let si = s.invariants().unwrap();
                prop_assert_eq!(&si.j, &inv.j);
                let (mm, _) = minimize_short(&s).unwrap();
                prop_assert_eq!(&mm.invariants().unwrap().j, &inv.j);
                let (m2, u2) = minimize_short(&mm).unwrap();
                prop_assert_eq!(m2, mm.clone());
                prop_assert!(u2.is_one());
                // minimal ord at 2 and 3 never exceeds that of the integral long model
                for p in [2u64, 3] {
                    let r = reduction_report(&mm, &BigInt::from(p)).unwrap();
                    prop_assert!(r.ord_delta <= val(&inv.delta, p).unwrap());
                }
            }
        }

        #[test]
        fn kind_invariant_under_scaling(a in -300i64..300, b in -300i64..300, u in prop::sample::select(vec![1i64, 2, 3, 6, 11])) {
            let m = ShortModel::new(a, b);
            prop_assume!(!m.delta_prime().is_zero());
            let s = m.scaled_up(&BigInt::from(u));
            for p in [5u64, 7, 13, 17, 19, 23] {
                if u % p as i64 == 0 { continue; }
                let r1 = reduction_report(&m, &BigInt::from(p)).unwrap();
                let r2 = reduction_report(&s, &BigInt::from(p)).unwrap();
                prop_assert_eq!(r1.kind, r2.kind);
            }
        }
    }
}
