//! Integers, rationals, primality, factorization and p-adic valuations.
//!
//! Factoring is trial division up to a bound followed by Pollard rho with
//! Brent's cycle detection. Primality is Miller-Rabin with the first 13 prime
//! bases, which is deterministic below 3.3·10^24 (Sorenson–Webster).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub use num_bigint::BigInt as Int;

/// Exact rational, always reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// Miller-Rabin with these bases is exact for n < 3317044064679887385961981.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn mr_threshold() -> &'static BigInt {
    static T: OnceLock<BigInt> = OnceLock::new();
    T.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primality {
    pub prime: bool,
    /// false when n is above the deterministic threshold and the verdict
    /// "prime" is probabilistic (error below 4^-25).
    pub certain: bool,
}

/// A signed factorization n = sign · Π pᵢ^eᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// strictly increasing primes with positive exponents
    pub factors: Vec<(BigInt, u32)>,
    /// every listed prime passed the deterministic test
    pub certified: bool,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Work limits for [`factorize_with`].
#[derive(Debug, Clone, Copy)]
pub struct Effort {
    pub trial_bound: u64,
    /// total Pollard-rho iterations across all cofactors
    pub rho_iterations: u64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            trial_bound: 1_000_000,
            rho_iterations: 20_000_000,
        }
    }
}

/// Primes below `n` by the sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_below(1_000_001))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = ((a % m) as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Legendre symbol (a/p) for an odd prime p, as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn mr_round_u64(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    MR_BASES[..12].iter().all(|&a| mr_round_u64(n, d, s, a))
}

fn mr_round_big(n: &BigInt, d: &BigInt, s: u64, a: u64) -> bool {
    let n1 = n - 1u32;
    let mut x = BigInt::from(a).modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Primality of n > 1.
pub fn is_prime(n: &BigInt) -> Result<Primality> {
    if n <= &BigInt::one() {
        return domain(format!("primality of {n} is undefined (n ≤ 1)"));
    }
    Ok(primality(n))
}

fn primality(n: &BigInt) -> Primality {
    if let Some(v) = n.to_u64() {
        return Primality {
            prime: is_prime_u64(v),
            certain: true,
        };
    }
    for &p in MR_BASES.iter().chain(MR_EXTRA.iter()) {
        if (n % p).is_zero() {
            return Primality {
                prime: false,
                certain: true,
            };
        }
    }
    let n1: BigInt = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let certain = n < mr_threshold();
    let bases: Vec<u64> = if certain {
        MR_BASES.to_vec()
    } else {
        MR_BASES.iter().chain(MR_EXTRA.iter()).copied().collect()
    };
    for a in bases {
        if !mr_round_big(n, &d, s, a) {
            return Primality {
                prime: false,
                certain: true,
            };
        }
    }
    Primality {
        prime: true,
        certain,
    }
}

/// Convenience: is n a prime (n ≤ 1 counts as not prime).
pub fn is_probable_prime(n: &BigInt) -> bool {
    n > &BigInt::one() && primality(n).prime
}

/// Largest e with pᵉ | n.
pub fn padic_val(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return domain("valuation of 0 is infinite");
    }
    if p <= &BigInt::one() {
        return domain(format!("{p} is not a prime"));
    }
    Ok(val_nonzero(n, p))
}

pub(crate) fn val_nonzero(n: &BigInt, p: &BigInt) -> u32 {
    let mut e = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// Valuation at a small prime, None for zero.
pub fn val(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        None
    } else {
        Some(val_nonzero(n, &BigInt::from(p)))
    }
}

/// Valuation of a nonzero rational.
pub fn val_rat(x: &BigRat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(val(x.numer(), p)? as i64 - val(x.denom(), p)? as i64)
}

pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with(n, &Effort::default())
}

pub fn factorize_with(n: &BigInt, effort: &Effort) -> Result<Factorization> {
    if n.is_zero() {
        return domain("cannot factor 0");
    }
    let sign: i8 = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();
    let bound = effort.trial_bound.min(1_000_000);
    for &p in small_primes() {
        if p > bound {
            break;
        }
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            found.insert(pb, e);
        }
    }
    let mut budget = effort.rho_iterations;
    let mut stack = Vec::new();
    let mut stuck: Vec<BigInt> = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    let mut certified = true;
    while let Some(c) = stack.pop() {
        let b = BigInt::from(bound);
        let pr = if &b * &b > c { Primality { prime: true, certain: true } } else { primality(&c) };
        if pr.prime {
            certified &= pr.certain;
            *found.entry(c).or_insert(0) += 1;
            continue;
        }
        match rho_split(&c, &mut budget) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => stuck.push(c),
        }
    }
    let fact = Factorization {
        sign,
        factors: found.into_iter().collect(),
        certified,
    };
    if !stuck.is_empty() {
        let cofactor = stuck.iter().fold(BigInt::one(), |a, b| a * b);
        return Err(Error::IncompleteFactorization {
            cofactor,
            partial: fact,
        });
    }
    Ok(fact)
}

/// A nontrivial factor of the composite n, or None if the budget runs out.
fn rho_split(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return Some(r);
    }
    if let Some(v) = n.to_u64() {
        for c in 1..64u64 {
            match brent_u64(v, c, budget) {
                Some(d) if d != v => return Some(BigInt::from(d)),
                Some(_) => continue,
                None => return None,
            }
        }
        return None;
    }
    for c in 1..64u64 {
        match brent_big(n, c, budget) {
            Some(d) if &d != n => return Some(d),
            Some(_) => continue,
            None => return None,
        }
    }
    None
}

// Brent's variant: y advances by powers of two, gcd batched every m steps.
fn brent_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = m.min(r - k);
            for _ in 0..lim {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            *budget = budget.checked_sub(lim)?;
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    Some(g)
}

fn brent_big(n: &BigInt, c: u64, budget: &mut u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let m = 128u64;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = BigInt::zero();
    let mut ys = BigInt::zero();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = m.min(r - k);
            for _ in 0..lim {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            *budget = budget.checked_sub(lim)?;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Some(g)
}

/// All positive divisors d with d² | n, from a factorization of n.
pub fn square_divisors(f: &Factorization) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=(e / 2) {
                next.push(pk.clone());
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

pub fn rat(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

pub fn frac(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRat {
    BigRat::new(a.into(), b.into())
}

/// Residue of n modulo a small positive m, in [0, m).
pub fn residue(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Residue of a rational whose denominator is a unit mod p.
pub fn residue_rat(x: &BigRat, p: u64) -> Option<u64> {
    let d = residue(x.denom(), p);
    let di = inv_mod(d, p)?;
    Some(mul_mod(residue(x.numer(), p), di, p))
}

/// Integers with |n| ≤ 2^53 fit an IEEE double exactly.
pub fn fits_f64(n: &BigInt) -> bool {
    n.magnitude().bits() <= 53
}

pub fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
