//! Rational torsion by the Lutz–Nagell sweep on the minimized short model:
//! torsion points are integral with y = 0 or y² | 4A³ + 27B².

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize_with, square_divisors, BigRat, Effort};
use crate::curves::{minimize_short_with, ShortModel};
use crate::divpoly::{torsion_test, DivisionTable};
use crate::error::{domain, Error, Result};
use crate::ffcurve::{reduce_curve, reduce_point, FpPoint};

/// Mazur: a rational torsion point has order at most 12 and the group at most 16 elements.
pub const MAX_ORDER: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionStructure {
    Trivial,
    Cyclic(u32),
    /// ℤ/2 × ℤ/2n, stored as 2n
    TwoByEven(u32),
}

impl TorsionStructure {
    pub fn order(&self) -> u32 {
        match *self {
            TorsionStructure::Trivial => 1,
            TorsionStructure::Cyclic(n) => n,
            TorsionStructure::TwoByEven(n) => 2 * n,
        }
    }

    /// One of the fifteen groups on Mazur's list.
    pub fn is_admissible(&self) -> bool {
        match *self {
            TorsionStructure::Trivial => true,
            TorsionStructure::Cyclic(n) => (2..=10).contains(&n) || n == 12,
            TorsionStructure::TwoByEven(n) => matches!(n, 2 | 4 | 6 | 8),
        }
    }
}

impl std::fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TorsionStructure::Trivial => write!(f, "trivial"),
            TorsionStructure::Cyclic(n) => write!(f, "Z/{n}"),
            TorsionStructure::TwoByEven(n) => write!(f, "Z/2 x Z/{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionGroup {
    /// the minimized model the points live on
    pub model: ShortModel,
    pub structure: TorsionStructure,
    /// affine torsion points sorted by (x, y); O is implicit
    pub points: Vec<TorsionPoint>,
}

type RatPoint = Option<(BigRat, BigRat)>;

fn add_rat(a: &BigInt, p: &RatPoint, q: &RatPoint) -> RatPoint {
    let ((x1, y1), (x2, y2)) = match (p, q) {
        (None, r) | (r, None) => return r.clone(),
        (Some(s), Some(t)) => (s, t),
    };
    let lam = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return None;
        }
        (BigRat::from_integer(3.into()) * x1 * x1 + BigRat::from_integer(a.clone())) / (y1 * BigRat::from_integer(2.into()))
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lam * &lam - x1 - x2;
    let y3 = lam * (x1 - &x3) - y1;
    Some((x3, y3))
}

/// Order of (x, y) if it is at most `MAX_ORDER`, stopping at the first
/// non-integral multiple (which proves infinite order).
fn finite_order(a: &BigInt, x: &BigInt, y: &BigInt) -> Option<u32> {
    let p: RatPoint = Some((BigRat::from_integer(x.clone()), BigRat::from_integer(y.clone())));
    let mut acc = p.clone();
    for k in 2..=MAX_ORDER {
        acc = add_rat(a, &acc, &p);
        match &acc {
            None => return Some(k),
            Some((u, v)) if !u.is_integer() || !v.is_integer() => return None,
            _ => {}
        }
    }
    None
}

/// Integer roots of X³ + aX + c, by bisection on the monotone pieces.
pub fn integer_roots_cubic(a: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| x * x * x + a * x + c;
    let r = BigInt::one() + a.abs().max(c.abs());
    // x ≤ −k−1 and x ≥ k+1 are increasing, |x| ≤ k decreasing
    let k = if a.is_negative() { (-a / BigInt::from(3)).sqrt() } else { BigInt::from(-1) };
    let mut pieces = vec![];
    if k.is_negative() {
        pieces.push((-&r, r.clone(), true));
    } else {
        pieces.push((-&r, -&k - 1, true));
        pieces.push((-&k, k.clone(), false));
        pieces.push((&k + 1, r.clone(), true));
    }
    let mut out = vec![];
    for (lo, hi, inc) in pieces {
        if lo > hi {
            continue;
        }
        // first x in [lo, hi] with f(x) ≥ 0 (increasing) or ≤ 0 (decreasing)
        let past = |x: &BigInt| {
            let v = f(x);
            if inc {
                !v.is_negative()
            } else {
                !v.is_positive()
            }
        };
        let (mut l, mut h) = (lo.clone(), hi.clone());
        if !past(&h) {
            continue;
        }
        while l < h {
            let mid = (&l + &h).div_floor(&BigInt::from(2));
            if past(&mid) {
                h = mid;
            } else {
                l = mid + 1;
            }
        }
        if f(&l).is_zero() && !out.contains(&l) {
            out.push(l);
        }
    }
    out.sort();
    out
}

/// The Lutz–Nagell candidate points (y ≥ 0 and y ≤ 0 both listed).
pub fn candidates(m: &ShortModel, effort: &Effort) -> Result<Vec<(BigInt, BigInt)>> {
    let dp = m.delta_prime();
    if dp.is_zero() {
        return domain("singular model: 4A³ + 27B² = 0");
    }
    let f = factorize_with(&dp.abs(), effort)?;
    let mut out = vec![];
    for x in integer_roots_cubic(&m.a, &m.b) {
        out.push((x, BigInt::zero()));
    }
    for y in square_divisors(&f) {
        for x in integer_roots_cubic(&m.a, &(&m.b - &y * &y)) {
            out.push((x.clone(), -&y));
            out.push((x, y.clone()));
        }
    }
    out.sort();
    Ok(out)
}

pub fn rational_torsion(model: &ShortModel) -> Result<TorsionGroup> {
    rational_torsion_with(model, &Effort::default())
}

pub fn rational_torsion_with(model: &ShortModel, effort: &Effort) -> Result<TorsionGroup> {
    model.invariants()?;
    let (m, _) = minimize_short_with(model, effort)?;
    let dp = m.delta_prime();
    let mut table = DivisionTable::new(m.a.clone(), m.b.clone());
    let mut points = vec![];
    for (x, y) in candidates(&m, effort)? {
        let Some(order) = finite_order(&m.a, &x, &y) else { continue };
        if !torsion_test(&mut table, &x, &y, order as i64)? {
            return Err(Error::Invariant(format!(
                "({x}, {y}) has order {order} by the group law but f_{order} does not vanish"
            )));
        }
        points.push(TorsionPoint { x, y, order });
    }
    let n = points.len() as u32 + 1;
    let two_torsion = points.iter().filter(|p| p.y.is_zero()).count();
    let structure = match (n, two_torsion) {
        (1, _) => TorsionStructure::Trivial,
        (_, 3) => TorsionStructure::TwoByEven(n / 2),
        _ => TorsionStructure::Cyclic(n),
    };
    // output checks: Lutz–Nagell shape, closure, Mazur
    for p in &points {
        if !p.y.is_zero() && !(&dp % (&p.y * &p.y)).is_zero() {
            return Err(Error::Invariant(format!("y² ∤ Δ′ at ({}, {})", p.x, p.y)));
        }
    }
    let as_rat = |p: &TorsionPoint| -> RatPoint {
        Some((BigRat::from_integer(p.x.clone()), BigRat::from_integer(p.y.clone())))
    };
    for p in &points {
        for q in &points {
            let s = add_rat(&m.a, &as_rat(p), &as_rat(q));
            let closed = match &s {
                None => true,
                Some((u, v)) => points
                    .iter()
                    .any(|r| BigRat::from_integer(r.x.clone()) == *u && BigRat::from_integer(r.y.clone()) == *v),
            };
            if !closed {
                return Err(Error::Invariant("torsion set not closed under addition".into()));
            }
        }
    }
    if !structure.is_admissible() || n > MAX_ORDER {
        return Err(Error::Invariant(format!("{structure} is not on Mazur's list")));
    }
    Ok(TorsionGroup {
        model: m,
        structure,
        points,
    })
}

/// Whether reduction mod a good prime p is injective and order-preserving on E[m](ℚ).
pub fn torsion_injection_check(model: &ShortModel, p: u64, m: u64) -> Result<bool> {
    if m == 0 || m.gcd(&p) != 1 {
        return domain(format!("m = {m} must be positive and prime to p = {p}"));
    }
    let t = rational_torsion(model)?;
    let c = reduce_curve(&t.model, p)?;
    let mut images = vec![FpPoint::Infinity];
    for pt in t.points.iter().filter(|pt| m.is_multiple_of(pt.order as u64)) {
        let Some(img) = reduce_point(&c, &pt.x, &pt.y) else { return Ok(false) };
        if images.contains(&img) || c.point_order(&img)? != pt.order as u64 {
            return Ok(false);
        }
        images.push(img);
    }
    Ok(true)
}
