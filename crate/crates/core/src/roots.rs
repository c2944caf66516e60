//! Certified complex roots of squarefree integer polynomials.
//!
//! The variable is rescaled by a power of two so every root lies in the
//! unit disk. Seeds come from Aberth iteration (or from the caller), are
//! polished by Newton steps in fixed point with `FRAC_BITS` fractional bits, and isolated by the inclusion disks |z − r| ≤ n·|p(z)/p′(z)|, which
//! must come out pairwise disjoint.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub const FRAC_BITS: u64 = 320;

/// m · 2^e
#[derive(Debug, Clone, Copy)]
struct Xf {
    m: Complex64,
    e: i64,
}

fn pow2(k: i64) -> f64 {
    2f64.powi(k.clamp(-1070, 1023) as i32)
}

impl Xf {
    fn norm(self) -> Xf {
        let k = self.m.re.abs().max(self.m.im.abs());
        if k == 0.0 || !k.is_finite() {
            return Xf { m: self.m, e: 0 };
        }
        let s = k.log2().floor() as i64;
        Xf {
            m: self.m * pow2(-s),
            e: self.e + s,
        }
    }

    fn from_big(n: &BigInt) -> Xf {
        let bits = n.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (n >> shift as usize).to_f64().unwrap_or(0.0);
        Xf {
            m: Complex64::new(top, 0.0),
            e: shift,
        }
        .norm()
    }
}

/// Fixed-point complex number (re + i·im) / 2^f; the scale f is passed to
/// each operation that needs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Fx {
    pub fn zero() -> Fx {
        Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn from_c(z: Complex64, f: usize) -> Fx {
        let conv = |v: f64| {
            let (m, e) = (v * 2f64.powi(60), f as i64 - 60);
            let b = BigInt::from_f64(m).unwrap_or_default();
            if e >= 0 {
                b << e as usize
            } else {
                b >> (-e) as usize
            }
        };
        Fx {
            re: conv(z.re),
            im: conv(z.im),
        }
    }

    pub fn from_int(n: &BigInt, f: usize) -> Fx {
        Fx {
            re: n << f,
            im: BigInt::zero(),
        }
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Fx, f: usize) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> f,
            im: (&self.re * &o.im + &self.im * &o.re) >> f,
        }
    }

    /// None when the divisor is zero at this precision.
    pub fn div(&self, o: &Fx, f: usize) -> Option<Fx> {
        let n2 = &o.re * &o.re + &o.im * &o.im;
        if n2.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << f;
        let im = (&self.im * &o.re - &self.re * &o.im) << f;
        Some(Fx { re: re / &n2, im: im / n2 })
    }

    pub fn shl(&self, k: usize) -> Fx {
        Fx {
            re: &self.re << k,
            im: &self.im << k,
        }
    }

    /// Move from scale 2^from to scale 2^to.
    pub fn rescaled(&self, from: usize, to: usize) -> Fx {
        if to >= from {
            self.shl(to - from)
        } else {
            Fx {
                re: &self.re >> (from - to),
                im: &self.im >> (from - to),
            }
        }
    }

    pub fn to_c(&self, f: usize) -> Complex64 {
        let conv = |v: &BigInt| {
            let x = Xf::from_big(v);
            x.m.re * pow2(x.e - f as i64)
        };
        Complex64::new(conv(&self.re), conv(&self.im))
    }

    /// log₂|z|, −∞ for zero.
    pub fn log2_abs(&self, f: usize) -> f64 {
        let a = Xf::from_big(&self.re);
        let b = Xf::from_big(&self.im);
        let e = a.e.max(b.e);
        let (x, y) = (a.m.re * pow2(a.e - e), b.m.re * pow2(b.e - e));
        (x * x + y * y).sqrt().log2() + e as f64 - f as f64
    }

    /// self / o as an f64 complex number, for values of any size.
    fn ratio(&self, o: &Fx) -> Complex64 {
        let (a, b) = (Xf::from_big(&self.re), Xf::from_big(&self.im));
        let (c, d) = (Xf::from_big(&o.re), Xf::from_big(&o.im));
        let e1 = a.e.max(b.e);
        let e2 = c.e.max(d.e);
        let num = Complex64::new(a.m.re * pow2(a.e - e1), b.m.re * pow2(b.e - e1));
        let den = Complex64::new(c.m.re * pow2(c.e - e2), d.m.re * pow2(d.e - e2));
        num / den * pow2(e1 - e2)
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    pub z: Complex64,
    /// radius of a disk around `z` containing exactly this root
    pub radius: f64,
    /// the polished root at FRAC_BITS fractional bits
    pub fixed: Fx,
}

/// s with every root of Σ c_k X^k inside |X| ≤ 2^(s−1) (Fujiwara's bound),
/// from log₂|c_k|.
fn root_scale(logs: &[f64]) -> i64 {
    let n = logs.len() - 1;
    let mut bound = f64::NEG_INFINITY;
    for k in 1..=n {
        if logs[n - k].is_finite() {
            bound = bound.max((logs[n - k] - logs[n]) / k as f64);
        }
    }
    if bound.is_finite() {
        (bound + 1.0).ceil() as i64 + 1
    } else {
        0
    }
}

/// Multiply coefficient k by 2^(k·s) for s ≥ 0 or divide for s < 0, keeping
/// the largest coefficient exact.
fn rescale_fx(c: &[Fx], s: i64) -> Vec<Fx> {
    let n = c.len() as i64 - 1;
    c.iter()
        .enumerate()
        .map(|(k, ck)| {
            let sh = if s >= 0 { k as i64 * s } else { (n - k as i64) * -s };
            ck.shl(sh as usize)
        })
        .collect()
}

fn horner_fx(c: &[Fx], z: &Fx, f: usize) -> (Fx, Fx) {
    let mut p = c.last().unwrap().clone();
    let mut dp = Fx::zero();
    for ck in c.iter().rev().skip(1) {
        dp = dp.mul(z, f).add(&p);
        p = p.mul(z, f).add(ck);
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration for a polynomial with roots in the unit disk.
/// Iterates are f64; p/p′ is evaluated in fixed point at the coefficients'
/// own scale, since the monomial basis cancels far more digits than f64 holds.
fn aberth(c: &[Fx], f: usize, max_iter: usize) -> Vec<Complex64> {
    let n = c.len() - 1;
    let l0 = c[0].log2_abs(f);
    let ln = c[n].log2_abs(f);
    let r0 = if l0.is_finite() { ((l0 - ln) / n as f64).exp2().clamp(1e-3, 0.9) } else { 0.5 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_fx(c, &Fx::from_c(z[k], f), f);
            if p.re.is_zero() && p.im.is_zero() {
                done[k] = true;
                continue;
            }
            let ratio = p.ratio(&dp);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
            }
            if !w.is_finite() || w.norm() <= 1e-14 * (z[k].norm() + 1e-12) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z
}

/// Approximate roots of Σ c_k X^k with fixed-point complex coefficients at
/// scale 2^f (f ≥ 64). Not certified; meant as seeds for [`certify`].
pub fn approximate_roots(c: &[Fx], f: usize) -> Vec<Complex64> {
    if c.len() < 2 {
        return vec![];
    }
    let s = root_scale(&c.iter().map(|x| x.log2_abs(f)).collect::<Vec<_>>());
    let scaled = rescale_fx(c, s);
    aberth(&scaled, f, 500).into_iter().map(|y| y * pow2(s)).collect()
}

fn int_coeffs(p: &Poly<BigInt>) -> Vec<Fx> {
    p.coeffs().iter().map(|c| Fx::from_int(c, 0)).collect()
}

/// Every complex root of a squarefree integer polynomial, isolated.
pub fn certified_roots(p: &Poly<BigInt>) -> Result<Vec<CertifiedRoot>> {
    match p.degree() {
        None => return Err(Error::Domain("zero polynomial has no isolated roots".into())),
        Some(0) => return Ok(vec![]),
        Some(_) => {}
    }
    const F: usize = 64;
    let c: Vec<Fx> = p.coeffs().iter().map(|c| Fx::from_int(c, F)).collect();
    certify(p, &approximate_roots(&c, F))
}

/// Polish one seed per root of p by Newton steps in fixed point and check
/// that the inclusion disks are pairwise disjoint.
pub fn certify(p: &Poly<BigInt>, seeds: &[Complex64]) -> Result<Vec<CertifiedRoot>> {
    const F: usize = FRAC_BITS as usize;
    let n = p.deg();
    if seeds.len() != n {
        return Err(Error::Invariant(format!("{} seeds for a degree-{n} polynomial", seeds.len())));
    }
    let raw = int_coeffs(p);
    let s = root_scale(&raw.iter().map(|x| x.log2_abs(0)).collect::<Vec<_>>());
    let q: Vec<Fx> = rescale_fx(&raw, s).iter().map(|x| x.shl(F)).collect();
    let mut ys = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for seed in seeds {
        let mut y = Fx::from_c(seed * pow2(-s), F);
        for _ in 0..12 {
            let (v, dv) = horner_fx(&q, &y, F);
            let Some(step) = v.div(&dv, F) else { break };
            y = y.sub(&step);
            if step.log2_abs(F) < 20.0 - FRAC_BITS as f64 {
                break;
            }
        }
        let (v, dv) = horner_fx(&q, &y, F);
        // each Horner step truncates by < 2 units of 2^-F and |y| ≤ 1
        let slack = (4.0 * (n + 1) as f64).log2() - FRAC_BITS as f64;
        let lv = v.log2_abs(F).max(slack) + 1.0;
        let ld = dv.log2_abs(F);
        if ld <= slack + (n as f64).log2() + 1.0 {
            return Err(Error::Invariant("root isolation lost precision".into()));
        }
        let r = (n as f64).log2() + lv - (ld - 1.0);
        radii.push(r.exp2());
        ys.push(y);
    }
    let yc: Vec<Complex64> = ys.iter().map(|y| y.to_c(F)).collect();
    for i in 0..n {
        if yc[i].norm() > 1.0 {
            return Err(Error::Invariant("root estimate escaped the scaled disk".into()));
        }
        for j in i + 1..n {
            if (yc[i] - yc[j]).norm() <= radii[i] + radii[j] + 1e-13 {
                return Err(Error::Invariant(format!(
                    "inclusion disks {i} and {j} overlap; roots not isolated"
                )));
            }
        }
    }
    Ok(ys
        .into_iter()
        .zip(radii)
        .map(|(y, r)| {
            let fixed = if s >= 0 { y.shl(s as usize) } else { y.rescaled(F, (F as i64 + s) as usize) };
            CertifiedRoot {
                z: y.to_c(F) * pow2(s),
                radius: r * (1.0 + 1e-9) * pow2(s),
                fixed,
            }
        })
        .collect())
}

/// Evaluate an integer polynomial at a fixed-point argument.
pub fn eval_fixed(p: &Poly<BigInt>, z: &Fx) -> Fx {
    if p.is_zero() {
        return Fx::zero();
    }
    let f = FRAC_BITS as usize;
    let c: Vec<Fx> = p.coeffs().iter().map(|c| Fx::from_int(c, f)).collect();
    horner_fx(&c, z, f).0
}
