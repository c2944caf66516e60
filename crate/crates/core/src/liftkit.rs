//! Lifting data for points of Ẽ(F_p): the ℓ-part generator, a residue lift
//! of its y-coordinate with a Hensel certificate for the x-coordinate, and
//! the Bézout pair that splits a point into an ℓ-part and an ℓ-multiple.
//! Also the admissible set of y² values and the radical/cubic tower over Q
//! that contains the lifted coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{frac, is_prime_u64, rat, val, BigRat};
use crate::curves::ShortModel;
use crate::error::{Error, Result};
use crate::ffcurve::{reduce_curve, FpCurve, FpPoint};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselCertificate {
    /// a ≡ target_x mod p with v_p(f(a)) > 2·v_p(f′(a))
    pub anchor: BigInt,
    /// None when f(a) = 0 exactly
    pub val_f: Option<u32>,
    pub val_df: u32,
    /// target_x is already a simple root mod p (anchor = target_x, val_df = 0)
    pub simple_mod_p: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointLift {
    /// least non-negative residue of ȳ
    pub y_lift: BigInt,
    pub y_squared: BigRat,
    /// X³ + AX + B − y²
    pub cubic: Poly<BigInt>,
    pub target_x: u64,
    pub hensel: HenselCertificate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftPlan {
    pub p: u64,
    pub ell: u64,
    pub group_order: u64,
    /// ℓ-valuation of #Ẽ(F_p)
    pub n: u32,
    /// prime-to-ℓ part of #Ẽ(F_p)
    pub m: u64,
    /// smallest point of maximal ℓ-power order; O when n = 0
    pub generator: FpPoint,
    pub generator_order: u64,
    /// None for the trivial plan (n = 0)
    pub lift: Option<PointLift>,
    /// (a, b) with m·a + ℓ·b = 1, 0 ≤ a < ℓ
    pub bezout: (BigInt, BigInt),
}

fn p_minimal(model: &ShortModel, p: u64) -> ShortModel {
    let pb = BigInt::from(p);
    let (p4, p6) = (pb.pow(4), pb.pow(6));
    let mut m = model.clone();
    while !(m.a.is_zero() && m.b.is_zero()) && m.a.is_multiple_of(&p4) && m.b.is_multiple_of(&p6) {
        m = m.scaled_down(&pb);
    }
    m
}

fn vp(n: &BigInt, p: u64) -> u32 {
    val(n, p).unwrap_or(u32::MAX)
}

impl HenselCertificate {
    pub fn holds(&self) -> bool {
        self.val_f.is_none_or(|v| v > 2 * self.val_df)
    }
}

/// Search a ≡ t mod p, level by level up to p^5, for an anchor of the
/// generalized Hensel lemma v(f(a)) > 2·v(f′(a)).
pub fn hensel_anchor(f: &Poly<BigInt>, t: u64, p: u64) -> Option<HenselCertificate> {
    let df = f.derivative();
    let pb = BigInt::from(p);
    let t0 = BigInt::from(t);
    let check = |a: &BigInt| {
        let fa = f.eval(a);
        let vd = val(&df.eval(a), p)?;
        let vf = val(&fa, p);
        if vf.is_some_and(|v| v <= 2 * vd) {
            return None;
        }
        Some(HenselCertificate { anchor: a.clone(), val_f: vf, val_df: vd, simple_mod_p: vd == 0 })
    };
    if vp(&f.eval(&t0), p) == 0 {
        return None;
    }
    let mut classes = 1u64;
    for _ in 0..5 {
        for j in 0..classes {
            if let Some(h) = check(&(&t0 + &pb * BigInt::from(j))) {
                return Some(h);
            }
        }
        classes = classes.checked_mul(p).filter(|&c| c <= 1_000_000)?;
    }
    None
}

fn bezout(m: u64, ell: u64) -> (BigInt, BigInt) {
    let (mb, lb) = (BigInt::from(m), BigInt::from(ell));
    let e = mb.extended_gcd(&lb);
    let a = e.x.mod_floor(&lb);
    let b = (BigInt::from(1) - &mb * &a) / &lb;
    (a, b)
}

pub fn lift_plan(model: &ShortModel, p: u64, ell: u64) -> Result<LiftPlan> {
    if !is_prime_u64(ell) {
        return Err(Error::Domain(format!("ℓ = {ell} is not prime")));
    }
    let pb = BigInt::from(p);
    let factors: [(&str, BigInt); 3] = [
        ("ℓ", BigInt::from(ell)),
        ("ℓ−1", BigInt::from(ell - 1)),
        ("ℓ+1", BigInt::from(ell + 1)),
    ];
    let curve = reduce_curve(model, p)?;
    for (name, v) in &factors {
        if v.is_multiple_of(&pb) {
            return Err(Error::Domain(format!("p = {p} divides {name} = {v}")));
        }
    }
    let min = p_minimal(model, p);
    if min.delta_prime().is_multiple_of(&pb) {
        return Err(Error::Domain(format!("p = {p} divides Δ′ = {}", min.delta_prime())));
    }
    let order = curve.group_order()?;
    let part = curve.ell_primary(ell)?;
    let n = part.size.trailing_zeros_base(ell);
    let m = order / part.size;
    let generator = part.generator;
    let generator_order = part.factors.1;
    let lift = match generator {
        FpPoint::Infinity => None,
        FpPoint::Affine(x, y) => {
            if y == 0 {
                return Err(Error::Unsupported(format!(
                    "generator ({x}, 0) is 2-torsion; y² = 0 is not a p-unit"
                )));
            }
            let y_lift = BigInt::from(y);
            let y2 = &y_lift * &y_lift;
            let cubic = Poly::new(vec![&min.b - &y2, min.a.clone(), BigInt::zero(), BigInt::from(1)], BigInt::zero());
            let hensel = hensel_anchor(&cubic, x, p).ok_or_else(|| {
                Error::Invariant(format!("no Hensel anchor over x ≡ {x} mod {p} for {cubic:?}"))
            })?;
            Some(PointLift { y_squared: rat(y2), y_lift, cubic, target_x: x, hensel })
        }
    };
    Ok(LiftPlan {
        p,
        ell,
        group_order: order,
        n,
        m,
        generator,
        generator_order,
        lift,
        bezout: bezout(m, ell),
    })
}

trait ValBase {
    fn trailing_zeros_base(self, b: u64) -> u32;
}

impl ValBase for u64 {
    fn trailing_zeros_base(mut self, b: u64) -> u32 {
        let mut k = 0;
        while self > 1 && self.is_multiple_of(b) {
            self /= b;
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayCheck {
    pub points: usize,
    /// P = [a]([m]P) + [ℓ]([b]P) for every point
    pub decomposition_holds: bool,
    /// [m]P lies in the subgroup generated by the generator for every P
    pub m_multiples_in_ell_part: bool,
    /// points P with [m]P = generator; for them [m]P − generator = O ∈ [ℓ]Ẽ
    pub generator_preimages: usize,
}

fn mul_signed(c: &FpCurve, pt: &FpPoint, k: &BigInt) -> FpPoint {
    let n: u64 = k.abs().try_into().expect("small multiplier");
    let q = c.mul(pt, n);
    if k.is_negative() {
        c.neg(&q)
    } else {
        q
    }
}

/// Exhaustive check of the plan's decomposition over Ẽ(F_p).
pub fn replay(model: &ShortModel, plan: &LiftPlan) -> Result<ReplayCheck> {
    let c = reduce_curve(model, plan.p)?;
    let pts = c.points()?;
    let mut span = vec![FpPoint::Infinity];
    let mut q = plan.generator;
    while q != FpPoint::Infinity {
        span.push(q);
        q = c.add(&q, &plan.generator);
    }
    let (a, b) = &plan.bezout;
    let ell = BigInt::from(plan.ell);
    let mut decomposition_holds = true;
    let mut in_part = true;
    let mut pre = 0;
    for pt in &pts {
        let mp = c.mul(pt, plan.m);
        let back = c.add(&mul_signed(&c, &mp, a), &mul_signed(&c, &mul_signed(&c, pt, b), &ell));
        decomposition_holds &= back == *pt;
        if plan.generator_order == plan.ell.pow(plan.n) {
            in_part &= span.contains(&mp);
        }
        if mp == plan.generator {
            pre += 1;
        }
    }
    Ok(ReplayCheck {
        points: pts.len(),
        decomposition_holds,
        m_multiples_in_ell_part: in_part,
        generator_preimages: pre,
    })
}

/// Reduced fractions a/b with 1 ≤ |a|, |b| ≤ C, ascending.
pub fn admissible_set(c: u64) -> Result<Vec<BigRat>> {
    if c == 0 {
        return Err(Error::Domain("C must be at least 1".into()));
    }
    let mut out = vec![];
    for a in 1..=c {
        for b in 1..=c {
            if a.gcd(&b) == 1 {
                out.push(frac(a as i64, b as i64));
                out.push(frac(-(a as i64), b as i64));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerDescriptor {
    pub c: u64,
    pub ell: u64,
    /// "i", then "sqrt(p)" for primes p ≤ C other than ℓ, then "sqrt(ℓ)"
    pub radicals: Vec<String>,
    /// ν, the number of primes p ≤ C other than ℓ
    pub nu: usize,
    /// one cubic X³ + AX + B = u per u in the admissible set
    pub cubic_layers: Vec<BigRat>,
    /// the degree over Q divides some 2^s·3^t with s ≤ s_max, t ≤ t_max
    pub s_max: u64,
    pub t_max: u64,
}

impl TowerDescriptor {
    pub fn degree_bound(&self) -> BigInt {
        BigInt::from(2).pow(self.s_max as u32) * BigInt::from(3).pow(self.t_max as u32)
    }
}

pub fn tower_descriptor(c: u64, ell: u64) -> Result<TowerDescriptor> {
    if ell <= 3 || !is_prime_u64(ell) {
        return Err(Error::Domain(format!("tower needs a prime ℓ > 3, got {ell}")));
    }
    let u = admissible_set(c)?;
    let primes: Vec<u64> = (2..=c).filter(|&q| is_prime_u64(q) && q != ell).collect();
    let mut radicals = vec!["i".to_string()];
    radicals.extend(primes.iter().map(|q| format!("sqrt({q})")));
    radicals.push(format!("sqrt({ell})"));
    let nu = primes.len();
    Ok(TowerDescriptor {
        c,
        ell,
        radicals,
        nu,
        s_max: 2 + nu as u64 + 2 * u.len() as u64,
        t_max: u.len() as u64,
        cubic_layers: u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mod7_curve() -> ShortModel {
        ShortModel::new(-5316979, -4724275762i64)
    }

    #[test]
    fn mod7_plan() {
        let plan = lift_plan(&mod7_curve(), 7, 5).unwrap();
        assert_eq!((plan.group_order, plan.n, plan.m), (10, 1, 2));
        assert_eq!(plan.generator, FpPoint::Affine(1, 3));
        assert_eq!(plan.bezout, (BigInt::from(3), BigInt::from(-1)));
        let lift = plan.lift.as_ref().unwrap();
        assert_eq!(lift.y_lift, BigInt::from(3));
        assert_eq!(lift.y_squared, rat(9));
        assert_eq!(lift.target_x, 1);
        assert_eq!(lift.cubic.coeffs()[0], BigInt::from(-4724275771i64));
        // X³ + A₁X + B₁ − 9 ≡ (X − 1)²(X + 2) mod 7: not simple mod 7, but
        // a = 36 has v(f) = 3 > 2·v(f′) = 2
        let h = &lift.hensel;
        assert!(!h.simple_mod_p);
        assert_eq!((h.anchor.clone(), h.val_f, h.val_df), (BigInt::from(36), Some(3), 1));
    }

    #[test]
    fn trivial_plans() {
        let plan = lift_plan(&mod7_curve(), 7, 3).unwrap();
        assert_eq!((plan.n, plan.m, plan.generator), (0, 10, FpPoint::Infinity));
        assert!(plan.lift.is_none());
        // #Ẽ(F_11) = 8, frozen from a brute-force count
        let plan = lift_plan(&mod7_curve(), 11, 5).unwrap();
        assert_eq!((plan.group_order, plan.n), (8, 0));
        let plan = lift_plan(&mod7_curve(), 13, 5).unwrap();
        assert_eq!((plan.group_order, plan.n), (10, 1));
        let h = &plan.lift.unwrap().hensel;
        assert!(h.holds());
    }

    #[test]
    fn preconditions() {
        // 7 | 14, 7 | 28, 7 | 7
        assert!(matches!(lift_plan(&mod7_curve(), 7, 13), Err(Error::Domain(m)) if m.contains("ℓ+1")));
        assert!(matches!(lift_plan(&mod7_curve(), 7, 29), Err(Error::Domain(m)) if m.contains("ℓ−1")));
        assert!(matches!(lift_plan(&mod7_curve(), 7, 7), Err(Error::Domain(m)) if m.contains("= 7")));
        assert!(matches!(lift_plan(&mod7_curve(), 23, 5), Err(Error::BadReduction { .. })));
    }

    #[test]
    fn mod7_replay() {
        let plan = lift_plan(&mod7_curve(), 7, 5).unwrap();
        let r = replay(&mod7_curve(), &plan).unwrap();
        assert_eq!(r.points, 10);
        assert!(r.decomposition_holds && r.m_multiples_in_ell_part);
        // [2]P = (1, 3) for the two points of order 10 over it
        assert_eq!(r.generator_preimages, 2);
    }

    #[test]
    fn admissible() {
        assert_eq!(admissible_set(1).unwrap(), vec![rat(-1), rat(1)]);
        assert_eq!(
            admissible_set(2).unwrap(),
            vec![rat(-2), rat(-1), frac(-1, 2), frac(1, 2), rat(1), rat(2)]
        );
        assert_eq!(admissible_set(3).unwrap().len(), 14);
        assert!(admissible_set(0).is_err());
    }

    #[test]
    fn towers() {
        let t = tower_descriptor(1, 5).unwrap();
        assert_eq!(t.radicals, vec!["i", "sqrt(5)"]);
        assert_eq!((t.cubic_layers.len(), t.s_max, t.t_max), (2, 6, 2));
        let t = tower_descriptor(5, 5).unwrap();
        assert_eq!(t.radicals, vec!["i", "sqrt(2)", "sqrt(3)", "sqrt(5)"]);
        for ell in [11, 41] {
            let t = tower_descriptor(3, ell).unwrap();
            assert!(t.degree_bound().gcd(&BigInt::from(ell)) == BigInt::from(1));
        }
        assert!(tower_descriptor(2, 3).is_err());
    }

    proptest! {
        #[test]
        fn plans_satisfy_invariants(a in -50i64..50, b in -50i64..50, pi in 2usize..25, li in 0usize..6) {
            let m = ShortModel::new(a, b);
            prop_assume!(!m.delta_prime().is_zero());
            let p = crate::arith::primes_below(100)[pi];
            let ell = [2u64, 3, 5, 7, 11, 13][li];
            let Ok(plan) = lift_plan(&m, p, ell) else { return Ok(()) };
            prop_assert_eq!(
                BigInt::from(plan.m) * &plan.bezout.0 + BigInt::from(ell) * &plan.bezout.1,
                BigInt::from(1)
            );
            prop_assert_eq!(plan.m * ell.pow(plan.n), plan.group_order);
            if let Some(l) = &plan.lift {
                prop_assert!(val(l.y_squared.numer(), p) == Some(0));
                prop_assert!(val(l.y_squared.denom(), p) == Some(0));
                let h = &l.hensel;
                prop_assert!(h.holds());
                prop_assert_eq!(crate::arith::residue(&h.anchor, p), l.target_x);
                prop_assert!(h.simple_mod_p == (h.val_df == 0));
            }
            let r = replay(&m, &plan).unwrap();
            prop_assert!(r.decomposition_holds);
        }
    }
}
