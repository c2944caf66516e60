//! Division polynomials and the identities built from them.
//!
//! `f_n` is the X-part of Ψ_n: Ψ_n = f_n for odd n and Ψ_n = f_n·Y for even
//! n, with Y² = ψ(X) = X³ + AX + B. The tables work over any exact ring, so
//! the same code checks identities in Z[A,B] and runs torsion tests over F_p.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{Field, Poly, Ring};
use crate::sym::Sym;

pub const DEFAULT_CEILING: usize = 700;

/// deg f_n: (n²−1)/2 for odd n, (n²−4)/2 for even n.
pub fn f_degree(n: u64) -> usize {
    if n == 0 {
        return 0;
    }
    if n % 2 == 1 {
        ((n * n - 1) / 2) as usize
    } else {
        ((n * n - 4) / 2) as usize
    }
}

/// Memoized f_n for one curve. Extending the table needs `&mut self`;
/// reads of already computed entries are shared.
#[derive(Debug, Clone)]
pub struct DivisionTable<R: Ring> {
    pub a: R,
    pub b: R,
    psi: Poly<R>,
    memo: BTreeMap<u64, Poly<R>>,
    ceiling: usize,
}

impl DivisionTable<Sym> {
    /// The generic table over Z[A, B].
    pub fn symbolic() -> Self {
        DivisionTable::new(Sym::a(), Sym::b())
    }
}

impl<R: Ring> DivisionTable<R> {
    pub fn new(a: R, b: R) -> Self {
        DivisionTable::with_ceiling(a, b, DEFAULT_CEILING)
    }

    pub fn with_ceiling(a: R, b: R, ceiling: usize) -> Self {
        let z = a.zero_like();
        let one = a.one_like();
        let psi = Poly::new(vec![b.clone(), a.clone(), z.clone(), one.clone()], z.clone());
        let k = |n: i64| a.int_like(n);
        let a2 = a.times(&a);
        let mut memo = BTreeMap::new();
        memo.insert(0, Poly::zero(&z));
        memo.insert(1, Poly::constant(one.clone()));
        memo.insert(2, Poly::constant(k(2)));
        // 3X⁴ + 6AX² + 12BX − A²
        memo.insert(
            3,
            Poly::new(
                vec![a2.negate(), k(12).times(&b), k(6).times(&a), z.clone(), k(3)],
                z.clone(),
            ),
        );
        // 4(X⁶ + 5AX⁴ + 20BX³ − 5A²X² − 4ABX − 8B² − A³)
        let f4 = Poly::new(
            vec![
                k(-8).times(&b).times(&b).minus(&a2.times(&a)),
                k(-4).times(&a).times(&b),
                k(-5).times(&a2),
                k(20).times(&b),
                k(5).times(&a),
                z.clone(),
                one,
            ],
            z,
        )
        .scale(&k(4));
        memo.insert(4, f4);
        DivisionTable {
            a,
            b,
            psi,
            memo,
            ceiling,
        }
    }

    /// ψ(X) = X³ + AX + B
    pub fn psi(&self) -> &Poly<R> {
        &self.psi
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    /// f_n for n ≥ −1 (f₋₁ = −1, f₀ = 0).
    pub fn f(&mut self, n: i64) -> Result<Poly<R>> {
        if n == -1 {
            return Ok(Poly::constant(self.a.int_like(-1)));
        }
        if n < -1 {
            return Err(Error::Domain(format!("f_{n} is not defined here")));
        }
        let n = n as u64;
        if let Some(p) = self.memo.get(&n) {
            return Ok(p.clone());
        }
        if f_degree(n) > self.ceiling {
            return Err(Error::Ceiling(format!(
                "f_{n} has degree {} above the table ceiling {}",
                f_degree(n),
                self.ceiling
            )));
        }
        let r = if n % 2 == 1 {
            let m = ((n - 1) / 2) as i64;
            let fm2 = self.f(m + 2)?;
            let fm = self.f(m)?;
            let fm1 = self.f(m + 1)?;
            let fmm = self.f(m - 1)?;
            let fm3 = &(&fm * &fm) * &fm;
            let fm13 = &(&fm1 * &fm1) * &fm1;
            let psi2 = &self.psi * &self.psi;
            if m % 2 == 0 {
                &(&(&fm2 * &fm3) * &psi2) - &(&fm13 * &fmm)
            } else {
                &(&fm2 * &fm3) - &(&(&fm13 * &fmm) * &psi2)
            }
        } else {
            let m = (n / 2) as i64;
            let fm = self.f(m)?;
            let fm2 = self.f(m + 2)?;
            let fmm = self.f(m - 1)?;
            let fmm2 = self.f(m - 2)?;
            let fm1 = self.f(m + 1)?;
            let inner = &(&fm2 * &(&fmm * &fmm)) - &(&fmm2 * &(&fm1 * &fm1));
            let full = &fm * &inner;
            full.div_exact_scalar(&self.a.int_like(2)).ok_or_else(|| {
                Error::Invariant(format!("even recursion for f_{n} is not divisible by 2"))
            })?
        };
        self.memo.insert(n, r.clone());
        Ok(r)
    }

    /// (Ψ′_n)² with Y² replaced by ψ(X).
    pub fn psi_squared(&mut self, n: i64) -> Result<Poly<R>> {
        let f = self.f(n)?;
        let sq = &f * &f;
        Ok(if n.rem_euclid(2) == 0 { &sq * &self.psi } else { sq })
    }

    /// Ψ′_{n−1}·Ψ′_{n+1} as a polynomial in X.
    fn neighbours(&mut self, n: i64) -> Result<Poly<R>> {
        let p = &self.f(n - 1)? * &self.f(n + 1)?;
        Ok(if n.rem_euclid(2) == 1 { &p * &self.psi } else { p })
    }

    /// f_{ℓⁿ} / f_{ℓⁿ⁻¹}, checked to be exact.
    pub fn quotient_g(&mut self, ell: u64, n: u32) -> Result<Poly<R>> {
        if ell < 3 || ell.is_multiple_of(2) {
            return Err(Error::Domain(format!("quotient_g needs an odd prime, got {ell}")));
        }
        if n == 0 {
            return Err(Error::Domain("quotient_g needs n ≥ 1".into()));
        }
        let top = self.f(ell.pow(n) as i64)?;
        let bottom = self.f(ell.pow(n - 1) as i64)?;
        top.div_exact(&bottom)
            .ok_or_else(|| Error::Invariant(format!("f_{{{ell}^{n}}} / f_{{{ell}^{}}} left a remainder", n - 1)))
    }

    /// Φ_m(X, λ) = (X − λ)(Ψ′_m)² − Ψ′_{m−1}Ψ′_{m+1}.
    pub fn build_phi(&mut self, m: i64, lambda: &R) -> Result<Poly<R>> {
        if m < 1 {
            return Err(Error::Domain("build_phi needs m ≥ 1".into()));
        }
        let z = self.a.zero_like();
        let x_minus = Poly::new(vec![lambda.negate(), z.one_like()], z);
        let sq = self.psi_squared(m)?;
        Ok(&(&x_minus * &sq) - &self.neighbours(m)?)
    }

    /// Degree, leading coefficient n and vanishing next coefficient.
    pub fn check_lemma5(&mut self, n: i64) -> Result<bool> {
        let f = self.f(n)?;
        let d = f_degree(n as u64);
        let lc_ok = f.degree() == Some(d) && f.lc() == self.a.int_like(n);
        let next_ok = d == 0 || f.coeff(d - 1).is_zero_elem();
        Ok(lc_ok && next_ok)
    }
}

/// f, φ, g, ψ with f·φ − g·ψ = 4A³ + 27B².
pub fn eq46_polys<R: Ring>(a: &R, b: &R) -> [Poly<R>; 4] {
    let z = a.zero_like();
    let k = |n: i64| a.int_like(n);
    let f = Poly::new(vec![k(4).times(a), z.clone(), k(3)], z.clone());
    let phi = Poly::new(
        vec![a.times(a), k(-8).times(b), k(-2).times(a), z.clone(), k(1)],
        z.clone(),
    );
    let g = Poly::new(vec![k(-27).times(b), k(-5).times(a), z.clone(), k(3)], z.clone());
    let psi = Poly::new(vec![b.clone(), a.clone(), z.clone(), k(1)], z);
    [f, phi, g, psi]
}

/// Whether f·φ − g·ψ is the constant polynomial 4A³ + 27B².
pub fn verify_eq46<R: Ring>(a: &R, b: &R) -> bool {
    let [f, phi, g, psi] = eq46_polys(a, b);
    let lhs = &(&f * &phi) - &(&g * &psi);
    let dp = a.int_like(4).times(a).times(a).times(a).plus(&a.int_like(27).times(b).times(b));
    lhs == Poly::constant(dp)
}

/// Ψ′_k at a point (x, y), using Ψ′_k = f_k(x) for odd k, f_k(x)·y for even k.
fn psi_at<R: Field>(t: &mut DivisionTable<R>, k: i64, x: &R) -> Result<R> {
    Ok(t.f(k)?.eval(x))
}

/// [a]P from the division polynomials.
pub fn mul_point_formula<R: Field>(t: &mut DivisionTable<R>, x: &R, y: &R, a: i64) -> Result<(R, R)> {
    if a < 1 {
        return Err(Error::Domain("multiplier must be ≥ 1".into()));
    }
    let f = |t: &mut DivisionTable<R>, k: i64| psi_at(t, k, x);
    let (fm2, fm1, f0, fp1, fp2) = (f(t, a - 2)?, f(t, a - 1)?, f(t, a)?, f(t, a + 1)?, f(t, a + 2)?);
    let s = t.psi().eval(x);
    let torsion = || Error::PointIsTorsion(a as u64);
    let four = x.int_like(4);
    let n = fp2.times(&fm1).times(&fm1).minus(&fm2.times(&fp1).times(&fp1));
    let f03 = f0.times(&f0).times(&f0);
    if a % 2 == 1 {
        let den = f0.times(&f0);
        let inv = den.inv().ok_or_else(torsion)?;
        let xa = x.minus(&fm1.times(&fp1).times(&s).times(&inv));
        let yd = four.times(&f03).inv().ok_or_else(torsion)?;
        Ok((xa, y.times(&n).times(&yd)))
    } else {
        let den = f0.times(&f0).times(&s);
        let inv = den.inv().ok_or_else(torsion)?;
        let xa = x.minus(&fm1.times(&fp1).times(&inv));
        let yd = four.times(&f03).times(&s).times(&s).inv().ok_or_else(torsion)?;
        Ok((xa, y.times(&n).times(&yd)))
    }
}

/// x([2]P) = φ(x) / (4ψ(x)).
pub fn duplication_x<R: Field>(a: &R, b: &R, x: &R) -> Option<R> {
    let [_, phi, _, psi] = eq46_polys(a, b);
    let d = psi.eval(x).times(&a.int_like(4));
    Some(phi.eval(x).times(&d.inv()?))
}

/// Whether [n]P = O for an affine point P.
pub fn torsion_test<R: Ring>(t: &mut DivisionTable<R>, x: &R, y: &R, n: i64) -> Result<bool> {
    if y.is_zero_elem() {
        Ok(t.psi_squared(n)?.eval(x).is_zero_elem())
    } else {
        Ok(t.f(n)?.eval(x).is_zero_elem())
    }
}
