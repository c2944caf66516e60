//! Curves y² = x³ + Ax + B over prime fields F_p, p ≥ 5: reduction from ℚ,
//! the group law, point counting and group structure.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{inv_mod, is_prime_u64, legendre, mul_mod, pow_mod, residue, val};
use crate::curves::{reduction_report, ShortModel};
use crate::error::{domain, Error, Result};

pub const DEFAULT_CEILING: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpCurve {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// Points order as O first, then (x, y) lexicographically on residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpPoint {
    Infinity,
    Affine(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: u64,
    /// n₁ | n₂, n₁·n₂ = order; n₁ = 1 for cyclic groups
    pub n1: u64,
    pub n2: u64,
    /// a point of order n₂, then one of order n₁ when n₁ > 1
    pub generators: Vec<FpPoint>,
}

impl GroupStructure {
    pub fn is_cyclic(&self) -> bool {
        self.n1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllPrimary {
    pub ell: u64,
    /// ℓ^e, the size of the ℓ-Sylow subgroup
    pub size: u64,
    /// invariant factors ℓ^a | ℓ^b of the component
    pub factors: (u64, u64),
    pub cyclic: bool,
    /// smallest point of maximal order (O for the trivial component)
    pub generator: FpPoint,
    /// (ℓ^k, points of exact order ℓ^k) for k ≥ 1
    pub points_by_order: Vec<(u64, Vec<FpPoint>)>,
}

/// Trial-division factorization of a small integer.
pub(crate) fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Square root mod an odd prime (Tonelli–Shanks), None for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut c = pow_mod(z, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    let mut t = pow_mod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        r = mul_mod(r, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        m = i;
    }
    Some(r.min(p - r))
}

/// p-minimize the model by (p⁴, p⁶) rescalings and reduce it mod p.
pub fn reduce_curve(model: &ShortModel, p: u64) -> Result<FpCurve> {
    if p < 5 || !is_prime_u64(p) {
        return domain(format!("reduction needs a prime p ≥ 5, got {p}"));
    }
    let (mut a, mut b) = (model.a.clone(), model.b.clone());
    let pb = BigInt::from(p);
    let adm = |x: &BigInt, k: u32| val(x, p).is_none_or(|v| v >= k);
    while !(a.is_zero() && b.is_zero()) && adm(&a, 4) && adm(&b, 6) {
        a /= pb.pow(4);
        b /= pb.pow(6);
    }
    let c = FpCurve {
        p,
        a: residue(&a, p),
        b: residue(&b, p),
    };
    if c.disc() == 0 {
        let report = reduction_report(model, &pb)?;
        return Err(Error::BadReduction {
            p,
            report: Box::new(report),
        });
    }
    Ok(c)
}

impl FpCurve {
    pub fn new(a: i64, b: i64, p: u64) -> Result<FpCurve> {
        if p < 5 || !is_prime_u64(p) {
            return domain(format!("F_p curves need a prime p ≥ 5, got {p}"));
        }
        let c = FpCurve {
            p,
            a: a.rem_euclid(p as i64) as u64,
            b: b.rem_euclid(p as i64) as u64,
        };
        if c.disc() == 0 {
            return domain(format!("4A³ + 27B² ≡ 0 mod {p}"));
        }
        Ok(c)
    }

    /// 4A³ + 27B² mod p
    pub fn disc(&self) -> u64 {
        let p = self.p;
        let a3 = mul_mod(mul_mod(self.a, self.a, p), self.a, p);
        (mul_mod(4, a3, p) + mul_mod(27, mul_mod(self.b, self.b, p), p)) % p
    }

    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        (mul_mod(x2, x, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    pub fn contains(&self, pt: &FpPoint) -> bool {
        match *pt {
            FpPoint::Infinity => true,
            FpPoint::Affine(x, y) => x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn point(&self, x: i64, y: i64) -> Result<FpPoint> {
        let pt = FpPoint::Affine(x.rem_euclid(self.p as i64) as u64, y.rem_euclid(self.p as i64) as u64);
        if !self.contains(&pt) {
            return domain(format!("({x}, {y}) is not on the curve mod {}", self.p));
        }
        Ok(pt)
    }

    pub fn neg(&self, pt: &FpPoint) -> FpPoint {
        match *pt {
            FpPoint::Infinity => FpPoint::Infinity,
            FpPoint::Affine(x, y) => FpPoint::Affine(x, (self.p - y) % self.p),
        }
    }

    pub fn add(&self, s: &FpPoint, t: &FpPoint) -> FpPoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*s, *t) {
            (FpPoint::Infinity, q) | (q, FpPoint::Infinity) => return q,
            (FpPoint::Affine(x1, y1), FpPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lam = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return FpPoint::Infinity;
            }
            let num = (mul_mod(3, mul_mod(x1, x1, p), p) + self.a) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p).expect("y ≠ 0"), p)
        } else {
            let num = (y2 + p - y1) % p;
            mul_mod(num, inv_mod((x2 + p - x1) % p, p).expect("x₁ ≠ x₂"), p)
        };
        let x3 = (mul_mod(lam, lam, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(lam, (x1 + p - x3) % p, p) + p - y1) % p;
        FpPoint::Affine(x3, y3)
    }

    pub fn mul(&self, pt: &FpPoint, mut k: u64) -> FpPoint {
        let mut acc = FpPoint::Infinity;
        let mut base = *pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn check_ceiling(&self, ceiling: u64) -> Result<()> {
        if self.p > ceiling {
            return Err(Error::Ceiling(format!(
                "desk-scale ceiling exceeded: p = {} > {ceiling}",
                self.p
            )));
        }
        Ok(())
    }

    /// #Ẽ(F_p) by the Legendre-symbol sum.
    pub fn group_order(&self) -> Result<u64> {
        self.group_order_with(DEFAULT_CEILING)
    }

    pub fn group_order_with(&self, ceiling: u64) -> Result<u64> {
        self.check_ceiling(ceiling)?;
        let s: i64 = (0..self.p).map(|x| 1 + legendre(self.rhs(x), self.p) as i64).sum();
        Ok((1 + s) as u64)
    }

    /// a_p = p + 1 − #Ẽ(F_p)
    pub fn trace(&self) -> Result<i64> {
        Ok(self.p as i64 + 1 - self.group_order()? as i64)
    }

    pub fn is_supersingular(&self) -> Result<bool> {
        Ok(self.trace()? == 0)
    }

    /// All points, O first, then affine points in (x, y) order.
    pub fn points(&self) -> Result<Vec<FpPoint>> {
        self.check_ceiling(DEFAULT_CEILING)?;
        let mut out = vec![FpPoint::Infinity];
        for x in 0..self.p {
            if let Some(y) = sqrt_mod(self.rhs(x), self.p) {
                out.push(FpPoint::Affine(x, y));
                if y != 0 {
                    out.push(FpPoint::Affine(x, self.p - y));
                }
            }
        }
        Ok(out)
    }

    /// Exact order of a point, dividing the group order.
    pub fn point_order(&self, pt: &FpPoint) -> Result<u64> {
        let n = self.group_order()?;
        Ok(self.order_dividing(pt, n))
    }

    fn order_dividing(&self, pt: &FpPoint, n: u64) -> u64 {
        let mut ord = n;
        for (q, _) in factor_small(n) {
            while ord.is_multiple_of(q) && self.mul(pt, ord / q) == FpPoint::Infinity {
                ord /= q;
            }
        }
        ord
    }

    /// The ℓ-Sylow subgroup: its invariant factors and points by order.
    pub fn ell_primary(&self, ell: u64) -> Result<EllPrimary> {
        if !is_prime_u64(ell) {
            return domain(format!("{ell} is not prime"));
        }
        let n = self.group_order()?;
        let mut size = 1;
        while n % (size * ell) == 0 {
            size *= ell;
        }
        let mut by_order: Vec<(u64, Vec<FpPoint>)> = Vec::new();
        let mut order_b = 1;
        let mut generator = FpPoint::Infinity;
        if size > 1 {
            for pt in self.points()? {
                if pt == FpPoint::Infinity || self.mul(&pt, size) != FpPoint::Infinity {
                    continue;
                }
                let o = self.order_dividing(&pt, size);
                match by_order.iter_mut().find(|(k, _)| *k == o) {
                    Some((_, v)) => v.push(pt),
                    None => by_order.push((o, vec![pt])),
                }
                if o > order_b {
                    order_b = o;
                    generator = pt;
                }
            }
        }
        by_order.sort_by_key(|(k, _)| *k);
        let cyclic = order_b == size;
        if !cyclic && self.p % ell != 1 {
            return Err(Error::Invariant(format!(
                "{ell}-part of Ẽ(F_{}) is not cyclic although p ≢ 1 mod {ell}",
                self.p
            )));
        }
        Ok(EllPrimary {
            ell,
            size,
            factors: (size / order_b, order_b),
            cyclic,
            generator,
            points_by_order: by_order,
        })
    }

    /// Invariant factors Ẽ(F_p) ≅ ℤ/n₁ × ℤ/n₂ with generators.
    pub fn structure(&self) -> Result<GroupStructure> {
        let n = self.group_order()?;
        let pts = self.points()?;
        let (mut n1, mut n2) = (1u64, 1u64);
        let (mut g1, mut g2) = (FpPoint::Infinity, FpPoint::Infinity);
        for (q, e) in factor_small(n) {
            let qe = q.pow(e);
            let cof = n / qe;
            // a generator of maximal order inside the q-Sylow subgroup
            let mut best = (1, FpPoint::Infinity);
            for pt in &pts {
                let s = self.mul(pt, cof);
                let o = self.order_dividing(&s, qe);
                if o > best.0 {
                    best = (o, s);
                    if o == qe {
                        break;
                    }
                }
            }
            let (qb, g) = best;
            let qa = qe / qb;
            n2 *= qb;
            g1 = self.add(&g1, &g);
            if qa > 1 {
                n1 *= qa;
                // an element of order q^a whose q-torsion part avoids <g>
                let gq = self.mul(&g, qb / q);
                let line: Vec<FpPoint> = (0..q).map(|k| self.mul(&gq, k)).collect();
                let h = pts
                    .iter()
                    .map(|pt| self.mul(pt, cof))
                    .find(|s| {
                        self.mul(s, qa) == FpPoint::Infinity
                            && self.order_dividing(s, qa) == qa
                            && !line.contains(&self.mul(s, qa / q))
                    })
                    .ok_or_else(|| Error::Invariant("no complement generator found".into()))?;
                g2 = self.add(&g2, &h);
            }
        }
        let mut generators = vec![g1];
        if n1 > 1 {
            generators.push(g2);
        }
        Ok(GroupStructure {
            order: n,
            n1,
            n2,
            generators,
        })
    }
}

/// Reduce a BigInt coordinate pair to an F_p point if it lies on the curve.
pub fn reduce_point(c: &FpCurve, x: &BigInt, y: &BigInt) -> Option<FpPoint> {
    let pt = FpPoint::Affine(residue(x, c.p), residue(y, c.p));
    c.contains(&pt).then_some(pt)
}

/// Group order of a model at a good prime p ≥ 5.
pub fn order_at(model: &ShortModel, p: &BigInt) -> Result<u64> {
    let p = p
        .to_u64()
        .ok_or_else(|| Error::Ceiling(format!("p = {p} is beyond desk scale")))?;
    reduce_curve(model, p)?.group_order()
}
