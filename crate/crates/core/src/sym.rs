//! The coefficient ring Z[A, B, λ] used for identities that must hold for
//! every curve. Terms are (packed exponent key, integer coefficient) pairs
//! sorted by key, with no zero coefficients.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Poly, Ring};

const BITS: u32 = 21;
const MASK: u64 = (1 << BITS) - 1;

fn key(a: u32, b: u32, l: u32) -> u64 {
    a as u64 | (b as u64) << BITS | (l as u64) << (2 * BITS)
}

fn unkey(k: u64) -> (u32, u32, u32) {
    (
        (k & MASK) as u32,
        ((k >> BITS) & MASK) as u32,
        (k >> (2 * BITS)) as u32,
    )
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Sym {
    t: Vec<(u64, BigInt)>,
}

impl Sym {
    pub fn int(n: impl Into<BigInt>) -> Sym {
        let n = n.into();
        if n.is_zero() {
            Sym::default()
        } else {
            Sym { t: vec![(0, n)] }
        }
    }

    /// c·A^a·B^b·λ^l
    pub fn monomial(c: impl Into<BigInt>, a: u32, b: u32, l: u32) -> Sym {
        let c = c.into();
        if c.is_zero() {
            return Sym::default();
        }
        Sym {
            t: vec![(key(a, b, l), c)],
        }
    }

    pub fn a() -> Sym {
        Sym::monomial(1, 1, 0, 0)
    }

    pub fn b() -> Sym {
        Sym::monomial(1, 0, 1, 0)
    }

    pub fn lambda() -> Sym {
        Sym::monomial(1, 0, 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &BigInt)> {
        self.t.iter().map(|(k, c)| (unkey(*k), c))
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.t.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Substitute A, B, λ by elements of another ring.
    pub fn eval<R: Ring>(&self, a: &R, b: &R, l: &R) -> R {
        let mut acc = a.zero_like();
        for ((i, j, k), c) in self.terms() {
            let mut m = a.one_like();
            for _ in 0..i {
                m = m.times(a);
            }
            for _ in 0..j {
                m = m.times(b);
            }
            for _ in 0..k {
                m = m.times(l);
            }
            acc = acc.plus(&m.times(&int_in(a, c)));
        }
        acc
    }

    fn from_map(m: HashMap<u64, BigInt>) -> Sym {
        let mut t: Vec<(u64, BigInt)> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        t.sort_unstable_by_key(|(k, _)| *k);
        Sym { t }
    }

    fn merge(&self, o: &Sym, neg: bool) -> Sym {
        let mut t = Vec::with_capacity(self.t.len() + o.t.len());
        let (mut i, mut j) = (0, 0);
        while i < self.t.len() || j < o.t.len() {
            let take_left = j >= o.t.len() || (i < self.t.len() && self.t[i].0 < o.t[j].0);
            let take_right = i >= self.t.len() || (j < o.t.len() && o.t[j].0 < self.t[i].0);
            if take_left {
                t.push(self.t[i].clone());
                i += 1;
            } else if take_right {
                let c = if neg { -&o.t[j].1 } else { o.t[j].1.clone() };
                t.push((o.t[j].0, c));
                j += 1;
            } else {
                let c = if neg { &self.t[i].1 - &o.t[j].1 } else { &self.t[i].1 + &o.t[j].1 };
                if !c.is_zero() {
                    t.push((self.t[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Sym { t }
    }
}

/// An integer as an element of R, via base-2³² digits so it works in any ring.
pub fn int_in<R: Ring>(proto: &R, n: &BigInt) -> R {
    if let Ok(v) = i64::try_from(n) {
        return proto.int_like(v);
    }
    let base = proto.int_like(1 << 32);
    let mut acc = proto.zero_like();
    let neg = n.is_negative();
    for d in n.magnitude().to_u32_digits().iter().rev() {
        acc = acc.times(&base).plus(&proto.int_like(*d as i64));
    }
    if neg {
        acc.negate()
    } else {
        acc
    }
}

impl Ring for Sym {
    fn zero_like(&self) -> Self {
        Sym::default()
    }
    fn one_like(&self) -> Self {
        Sym::int(1)
    }
    fn int_like(&self, n: i64) -> Self {
        Sym::int(n)
    }
    fn is_zero_elem(&self) -> bool {
        self.t.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.merge(o, false)
    }
    fn minus(&self, o: &Self) -> Self {
        self.merge(o, true)
    }
    fn times(&self, o: &Self) -> Self {
        if self.t.is_empty() || o.t.is_empty() {
            return Sym::default();
        }
        if self.t.len() == 1 && self.t[0].0 == 0 {
            let c = &self.t[0].1;
            return Sym {
                t: o.t.iter().map(|(k, d)| (*k, c * d)).collect(),
            };
        }
        let mut m: HashMap<u64, BigInt> = HashMap::with_capacity(self.t.len() * o.t.len());
        for (ka, ca) in &self.t {
            for (kb, cb) in &o.t {
                let prod = ca * cb;
                m.entry(ka + kb)
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
        }
        Sym::from_map(m)
    }
    fn negate(&self) -> Self {
        Sym {
            t: self.t.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    /// Exact division by a nonzero integer constant only.
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let d = o.as_constant()?;
        if d.is_zero() {
            return None;
        }
        let mut t = Vec::with_capacity(self.t.len());
        for (k, c) in &self.t {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            t.push((*k, q));
        }
        Some(Sym { t })
    }
}

fn fmt_monomial(i: u32, j: u32, k: u32) -> Vec<String> {
    let mut v = Vec::new();
    for (name, e) in [("A", i), ("B", j), ("λ", k)] {
        match e {
            0 => {}
            1 => v.push(name.to_string()),
            _ => v.push(format!("{name}^{e}")),
        }
    }
    v
}

/// Signed terms in display order: higher powers of A first, then B, then λ.
fn display_terms(s: &Sym) -> Vec<(bool, BigInt, Vec<String>)> {
    let mut t: Vec<_> = s.terms().collect();
    t.sort_by_key(|b| std::cmp::Reverse(b.0));
    t.into_iter()
        .map(|((i, j, k), c)| (c.is_negative(), c.abs(), fmt_monomial(i, j, k)))
        .collect()
}

fn push_term(out: &mut String, neg: bool, c: &BigInt, mut factors: Vec<String>) {
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if factors.is_empty() || !c.is_one() {
        factors.insert(0, c.to_string());
    }
    out.push_str(&factors.join("*"));
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (neg, c, m) in display_terms(self) {
            push_term(&mut out, neg, &c, m);
        }
        write!(f, "{out}")
    }
}

/// Render a polynomial over Z[A,B,λ] in X, expanded into monomials.
pub fn format_sym_poly(p: &Poly<Sym>) -> String {
    let mut out = String::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        for (neg, c, mut m) in display_terms(c) {
            match d {
                0 => {}
                1 => m.push("X".into()),
                _ => m.push(format!("X^{d}")),
            }
            push_term(&mut out, neg, &c, m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Specialize a symbolic polynomial at (A, B, λ).
pub fn specialize<R: Ring>(p: &Poly<Sym>, a: &R, b: &R, l: &R) -> Poly<R> {
    p.map(a, |c| c.eval(a, b, l))
}

pub fn is_one(s: &Sym) -> bool {
    s.as_constant().is_some_and(|c| c.is_one())
}
