//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored low degree first with no trailing zeros. Every
//! polynomial carries a zero element of its ring so that rings with runtime
//! parameters (F_p) can build constants.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod, BigRat};

/// Commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Exact quotient, None when `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(o);
        r.is_zero().then_some(q)
    }
}

impl Ring for BigRat {
    fn zero_like(&self) -> Self {
        BigRat::zero()
    }
    fn one_like(&self) -> Self {
        BigRat::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRat::from_integer(n.into())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

impl Field for BigRat {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Residue modulo a prime p < 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Debug for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Fp {
    pub fn new(v: i128, p: u64) -> Fp {
        Fp {
            v: v.rem_euclid(p as i128) as u64,
            p,
        }
    }
    pub fn from_big(v: &BigInt, p: u64) -> Fp {
        Fp {
            v: crate::arith::residue(v, p),
            p,
        }
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn int_like(&self, n: i64) -> Self {
        Fp::new(n as i128, self.p)
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn minus(&self, o: &Self) -> Self {
        Fp {
            v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v },
            p: self.p,
        }
    }
    fn times(&self, o: &Self) -> Self {
        Fp {
            v: mul_mod(self.v, o.v, self.p),
            p: self.p,
        }
    }
    fn negate(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self.times(&o.inv()?))
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    c: Vec<R>,
    zero: R,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>, zero: R) -> Self {
        while c.last().is_some_and(|x| x.is_zero_elem()) {
            c.pop();
        }
        Poly { c, zero }
    }

    pub fn zero(proto: &R) -> Self {
        Poly {
            c: Vec::new(),
            zero: proto.zero_like(),
        }
    }

    pub fn constant(r: R) -> Self {
        let z = r.zero_like();
        Poly::new(vec![r], z)
    }

    /// The monomial c·X^k.
    pub fn monomial(c: R, k: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Poly::new(v, z)
    }

    pub fn x(proto: &R) -> Self {
        Poly::monomial(proto.one_like(), 1)
    }

    pub fn from_ints(c: &[i64], proto: &R) -> Self {
        Poly::new(c.iter().map(|&n| proto.int_like(n)).collect(), proto.zero_like())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn scale(&self, r: &R) -> Self {
        Poly::new(self.c.iter().map(|x| x.times(r)).collect(), self.zero.clone())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.c.iter().cloned());
        Poly::new(v, self.zero.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.c.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Evaluate at an element of another ring, given a coefficient map.
    pub fn eval_in<S: Ring>(&self, x: &S, f: impl Fn(&R) -> S) -> S {
        let mut acc = x.zero_like();
        for c in self.c.iter().rev() {
            acc = acc.times(x).plus(&f(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.times(&self.zero.int_like(i as i64)))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    /// Apply a ring homomorphism coefficient-wise.
    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect(), zero.zero_like())
    }

    pub fn div_exact_scalar(&self, r: &R) -> Option<Self> {
        let v: Option<Vec<R>> = self.c.iter().map(|x| x.div_exact(r)).collect();
        Some(Poly::new(v?, self.zero.clone()))
    }

    /// Long division that must come out exact. Each step divides the
    /// running leading coefficient by lc(d) with [`Ring::div_exact`].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.pseudo_divrem(d)?;
        r.is_zero().then_some(q)
    }

    fn pseudo_divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Poly::zero(&self.zero), self.clone()));
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero_elem() {
                continue;
            }
            let t = r[i].div_exact(&lc)?;
            for (j, dc) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = r[k].minus(&t.times(dc));
            }
            q[i - dd] = t;
        }
        r.truncate(dd);
        Some((Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone())))
    }
}

impl<R: Field> Poly<R> {
    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        self.pseudo_divrem(d).expect("field division is exact")
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let one = Poly::constant(self.zero.one_like());
        let zero = Poly::zero(&self.zero);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        match r0.c.last() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, self.zero.clone())
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negate(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, self.zero.clone())
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero_elem() {
                    v[i + j] = v[i + j].plus(&a.times(b));
                }
            }
        }
        Poly::new(v, self.zero.clone())
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.c.iter().map(|x| x.negate()).collect(), self.zero.clone())
    }
}

/// Integer polynomial to rational polynomial.
pub fn to_rat(p: &Poly<BigInt>) -> Poly<BigRat> {
    p.map(&BigRat::zero(), |c| BigRat::from_integer(c.clone()))
}

/// Render an integer or rational polynomial in X, highest degree first.
pub fn format_poly<R>(p: &Poly<R>, var: &str) -> String
where
    R: Ring + Signed + std::fmt::Display,
{
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.c.iter().enumerate().rev() {
        if c.is_zero_elem() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = a == a.one_like();
        match (i, unit) {
            (0, _) => out.push_str(&a.to_string()),
            (_, true) => {}
            (_, false) => {
                out.push_str(&a.to_string());
                out.push('*');
            }
        }
        match i {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{i}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp(c: &[i64]) -> Poly<BigInt> {
        Poly::from_ints(c, &BigInt::zero())
    }

    fn qp(c: &[i64]) -> Poly<BigRat> {
        Poly::from_ints(c, &BigRat::zero())
    }

    #[test]
    fn arithmetic() {
        let a = zp(&[1, 1]);
        let b = zp(&[-1, 1]);
        assert_eq!(&a * &b, zp(&[-1, 0, 1]));
        assert_eq!(&a - &a, zp(&[]));
        assert_eq!((&a * &b).degree(), Some(2));
        assert_eq!(zp(&[]).degree(), None);
        assert_eq!(a.pow(3), zp(&[1, 3, 3, 1]));
        assert_eq!(a.pow(3).derivative(), zp(&[3, 6, 3]));
        assert_eq!(zp(&[1, 2, 3]).eval(&BigInt::from(2)), BigInt::from(17));
    }

    #[test]
    fn exact_division() {
        let a = zp(&[1, 1]);
        let b = zp(&[-1, 2]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&zp(&[1, 3])), None);
        // non-monic divisor over Z whose quotient is not integral
        assert_eq!(zp(&[1, 0, 1]).div_exact(&zp(&[0, 2])), None);
    }

    #[test]
    fn field_gcd() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1]);
        assert_eq!(a.gcd(&b), qp(&[1, 1]));
        let (g, s, t) = qp(&[1, 0, 1]).ext_gcd(&qp(&[0, 1]));
        assert_eq!(g, qp(&[1]));
        assert_eq!(&(&s * &qp(&[1, 0, 1])) + &(&t * &qp(&[0, 1])), g);
    }

    #[test]
    fn fp_ring() {
        let p = 7;
        let a = Fp::new(3, p);
        assert_eq!(a.inv(), Some(Fp::new(5, p)));
        assert_eq!(a.negate(), Fp::new(4, p));
        let f = Poly::from_ints(&[4, 4, 0, 1], &a);
        assert_eq!(f.eval(&Fp::new(1, p)), Fp::new(2, p));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_poly(&zp(&[-1, 0, 3, 1]), "X"), "X^3 + 3*X^2 - 1");
        assert_eq!(format_poly(&zp(&[1]), "X"), "1");
        assert_eq!(format_poly(&zp(&[0, -2]), "X"), "-2*X");
    }

    proptest! {
        #[test]
        fn divrem_identity(a in prop::collection::vec(-50i64..50, 0..8), b in prop::collection::vec(-50i64..50, 1..5)) {
            let (a, b) = (qp(&a), qp(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn mul_commutes(a in prop::collection::vec(-50i64..50, 0..8), b in prop::collection::vec(-50i64..50, 0..8)) {
            prop_assert_eq!(&zp(&a) * &zp(&b), &zp(&b) * &zp(&a));
        }
    }
}
