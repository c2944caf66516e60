//! Rules certifying that the mod-ℓ Galois image is all of GL₂(F_ℓ), and the
//! report of primes ℓ for which the Sha vanishing criterion does not apply.
//!
//! Verdicts are one-directional: a rule either proves surjectivity or the
//! verdict stays unknown. Nothing here ever claims the image is small.
//!
//! Chains:
//! - (a) semistable curve and ℓ ≥ 11
//! - (b) ℓ ≥ 5, an order-ℓ element from a Tate curve, and no Borel image
//!   because some |Φ_p| has a prime factor not dividing p(p−1)
//! - (c) ℓ above the bound (√p+1)⁸ for the smallest good prime p, ℓ ∤ Δ,
//!   and the Tate condition
//! - optional: Tate condition and ℓ outside Mazur's list

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize_with, is_prime_u64, Effort, Factorization};
use crate::curves::{minimize_short_with, reduction_report, Potential, ReductionKind, ReductionReport, ShortModel};
use crate::error::{Error, Result};

pub const DEFAULT_SCAN_BOUND: u64 = 10_000;

pub const MAZUR_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163];

/// (ℓ−1) | 12, i.e. ℓ ∈ {2, 3, 5, 7, 13}.
pub fn small_exceptional(ell: u64) -> bool {
    ell >= 2 && 12 % (ell - 1) == 0
}

/// A prime of potential multiplicative reduction whose ord(j) is prime to ℓ.
pub fn tate_witness(reports: &[ReductionReport], ell: u64) -> Option<&ReductionReport> {
    if ell.is_multiple_of(2) {
        return None;
    }
    reports.iter().find(|r| {
        r.potential == Potential::PotentiallyMultiplicative
            && r.ord_j.is_some_and(|e| e.unsigned_abs() % ell != 0)
    })
}

pub fn tate_order_rule(reports: &[ReductionReport], ell: u64) -> bool {
    tate_witness(reports, ell).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCandidates {
    pub values: Vec<u32>,
    /// the p = 2 narrowing was applied with ord Δ ≠ 8
    pub extrapolated: bool,
}

/// Possible orders of Φ_p for potential good reduction at p.
pub fn phi_order_candidates(p: u64, ord_delta: u32) -> Result<PhiCandidates> {
    match p {
        2 => {
            // 3 | e is forced when e·ordΔ ≡ 0 mod 12 and 3 ∤ ordΔ
            let narrowed = !ord_delta.is_multiple_of(3);
            let values = if narrowed { vec![3, 6, 24] } else { vec![2, 3, 4, 6, 8, 24] };
            Ok(PhiCandidates { values, extrapolated: narrowed && ord_delta != 8 })
        }
        3 => Err(Error::Unsupported("Φ_3 candidates are not determined".into())),
        _ if p >= 5 && is_prime_u64(p) => Ok(PhiCandidates {
            values: vec![12 / (ord_delta.gcd(&12))],
            extrapolated: false,
        }),
        _ => Err(Error::Domain(format!("{p} is not prime"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelWitness {
    pub p: u64,
    pub q: u64,
    pub candidates: PhiCandidates,
}

fn small_primes_of(n: u32) -> Vec<u64> {
    (2..=n as u64).filter(|&q| is_prime_u64(q) && (n as u64).is_multiple_of(q)).collect()
}

/// A potential-good additive prime p and a prime q dividing every candidate
/// |Φ_p| with q ∤ p(p−1).
pub fn borel_witness(reports: &[ReductionReport]) -> Option<BorelWitness> {
    for r in reports {
        if r.kind != ReductionKind::Additive || r.potential != Potential::PotentiallyGood {
            continue;
        }
        let Some(p) = r.p_u64() else { continue };
        let Ok(candidates) = phi_order_candidates(p, r.ord_delta) else { continue };
        let g = candidates.values.iter().fold(0u32, |g, &v| g.gcd(&v));
        for q in small_primes_of(g) {
            if p % q != 0 && (p - 1) % q != 0 {
                return Some(BorelWitness { p, q, candidates });
            }
        }
    }
    None
}

pub fn borel_excluded(reports: &[ReductionReport]) -> bool {
    borel_witness(reports).is_some()
}

/// Smallest prime not among the bad primes.
pub fn smallest_good_prime(reports: &[ReductionReport]) -> u64 {
    (2u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| !reports.iter().any(|r| r.p == BigInt::from(p)))
        .unwrap()
}

/// ⌊(√p+1)⁸⌋ for a non-square p, exactly: (p+1+2√p)⁴ = x + y√p.
pub fn serre_bound_for(p: u64) -> BigInt {
    let (x, y) = serre_parts(p);
    x + (&y * &y * BigInt::from(p)).sqrt()
}

fn serre_parts(p: u64) -> (BigInt, BigInt) {
    let pb = BigInt::from(p);
    let (mut x, mut y) = (BigInt::one(), BigInt::zero());
    let (a, b) = (&pb + 1u32, BigInt::from(2));
    for _ in 0..4 {
        let nx = &x * &a + &y * &b * &pb;
        let ny = &x * &b + &y * &a;
        x = nx;
        y = ny;
    }
    (x, y)
}

pub fn serre_bound(reports: &[ReductionReport]) -> BigInt {
    serre_bound_for(smallest_good_prime(reports))
}

/// Every bad prime multiplicative, and ℓ ≥ 11.
pub fn semistable_rule(reports: &[ReductionReport], ell: u64) -> bool {
    ell >= 11 && reports.iter().all(|r| matches!(r.kind, ReductionKind::Multiplicative(_)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    Semistable,
    TateOrder,
    BorelExcluded,
    SerreBound,
    MazurList,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Semistable => "semistable",
            Rule::TateOrder => "tate_order",
            Rule::BorelExcluded => "borel_excluded",
            Rule::SerreBound => "serre_bound",
            Rule::MazurList => "mazur_list",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reason {
    pub rule: Rule,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SurjectiveProven,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SurjectiveProven => "surjective_proven",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageVerdict {
    pub ell: u64,
    pub verdict: Verdict,
    /// surjectivity lifts to GL₂(Z_ℓ) (proven and ℓ ≥ 5)
    pub l_adic: bool,
    /// the chain that fired, or every rule tried when none did
    pub reasons: Vec<Reason>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleConfig {
    pub semistable: bool,
    pub tate_borel: bool,
    pub serre: bool,
    pub mazur_chain: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig { semistable: true, tate_borel: true, serre: true, mazur_chain: false }
    }
}

pub fn image_verdict(reports: &[ReductionReport], ell: u64) -> ImageVerdict {
    image_verdict_with(reports, ell, &RuleConfig::default())
}

pub fn image_verdict_with(reports: &[ReductionReport], ell: u64, cfg: &RuleConfig) -> ImageVerdict {
    let mut tried = vec![];
    let proven = |reasons: Vec<Reason>| ImageVerdict {
        ell,
        verdict: Verdict::SurjectiveProven,
        l_adic: ell >= 5,
        reasons,
    };

    if cfg.semistable {
        let holds = semistable_rule(reports, ell);
        let r = Reason { rule: Rule::Semistable, holds, detail: format!("all bad primes multiplicative, ell={ell}") };
        if holds {
            return proven(vec![r]);
        }
        tried.push(r);
    }

    let tate = tate_witness(reports, ell);
    let tate_reason = Reason {
        rule: Rule::TateOrder,
        holds: tate.is_some(),
        detail: match tate {
            Some(r) => format!("p0={} ord_j={}", r.p, r.ord_j.unwrap()),
            None => "no potentially multiplicative prime with ell not dividing ord_j".into(),
        },
    };

    if cfg.tate_borel && ell >= 5 {
        let borel = borel_witness(reports);
        let borel_reason = Reason {
            rule: Rule::BorelExcluded,
            holds: borel.is_some(),
            detail: match &borel {
                Some(w) => format!(
                    "p={} q={} phi_orders={:?}{}",
                    w.p,
                    w.q,
                    w.candidates.values,
                    if w.candidates.extrapolated { " extrapolated" } else { "" }
                ),
                None => "no potentially good prime excludes a Borel image".into(),
            },
        };
        if tate.is_some() && borel.is_some() {
            return proven(vec![tate_reason, borel_reason]);
        }
        tried.push(borel_reason);
    }

    if cfg.serre {
        let p = smallest_good_prime(reports);
        let bound = serre_bound_for(p);
        let divides_delta = reports.iter().any(|r| r.p == BigInt::from(ell));
        let holds = BigInt::from(ell) > bound && !divides_delta && tate.is_some();
        let r = Reason { rule: Rule::SerreBound, holds, detail: format!("p={p} bound={bound}") };
        if holds {
            return proven(vec![tate_reason, r]);
        }
        tried.push(r);
    }

    if cfg.mazur_chain {
        let outside = !MAZUR_PRIMES.contains(&ell);
        let r = Reason { rule: Rule::MazurList, holds: outside, detail: format!("ell={ell}") };
        if outside && tate.is_some() {
            return proven(vec![tate_reason, r]);
        }
        tried.push(r);
    }

    tried.insert(0, tate_reason);
    ImageVerdict { ell, verdict: Verdict::Unknown, l_adic: false, reasons: tried }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem5Report {
    /// the minimized short model
    pub model: ShortModel,
    pub delta_prime: BigInt,
    pub delta_factorization: Factorization,
    pub reports: Vec<ReductionReport>,
    /// sorted
    pub exceptional: Vec<BigInt>,
    pub smallest_applicable: Option<u64>,
    pub scan_bound: u64,
    /// primes up to the scan bound
    pub verdicts: Vec<ImageVerdict>,
    pub serre_bound: BigInt,
    /// every prime above the scan bound not dividing Δ′ is proven by a chain
    pub tail_certified: bool,
    /// unfactored part of Δ′ when the factorization budget ran out
    pub unfactored: Option<BigInt>,
    pub notes: Vec<String>,
}

impl Theorem5Report {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

pub fn theorem5_report(model: &ShortModel, scan_bound: u64) -> Result<Theorem5Report> {
    theorem5_report_with(model, scan_bound, &RuleConfig::default(), &Effort::default())
}

pub fn theorem5_report_with(
    model: &ShortModel,
    scan_bound: u64,
    cfg: &RuleConfig,
    effort: &Effort,
) -> Result<Theorem5Report> {
    model.invariants()?;
    let (m, _) = minimize_short_with(model, effort)?;
    let dp = m.delta_prime();
    let (fact, unfactored) = match factorize_with(&dp, effort) {
        Ok(f) => (f, None),
        Err(Error::IncompleteFactorization { cofactor, partial }) => (partial, Some(cofactor)),
        Err(e) => return Err(e),
    };
    let mut primes = vec![BigInt::from(2), BigInt::from(3)];
    primes.extend(fact.primes());
    primes.sort();
    primes.dedup();
    let mut reports = vec![];
    for p in &primes {
        let r = reduction_report(&m, p)?;
        if r.is_bad() {
            reports.push(r);
        }
    }

    let mut notes = vec![];
    if let Some(w) = borel_witness(&reports) {
        if w.candidates.extrapolated {
            notes.push(format!("phi_2 narrowing extrapolated from ord_delta=8 (p={})", w.p));
        }
    }
    if let Some(c) = &unfactored {
        notes.push(format!("delta_prime not fully factored; cofactor {c}"));
    }

    let divides_dp = |ell: u64| fact.factors.iter().any(|(p, _)| *p == BigInt::from(ell));
    let in_p = |v: &ImageVerdict| small_exceptional(v.ell) || divides_dp(v.ell) || v.verdict == Verdict::Unknown;

    let verdicts: Vec<ImageVerdict> = (2..=scan_bound)
        .filter(|&l| is_prime_u64(l))
        .map(|l| image_verdict_with(&reports, l, cfg))
        .collect();

    let mut exceptional: Vec<BigInt> = fact.primes();
    for v in &verdicts {
        if in_p(v) {
            exceptional.push(BigInt::from(v.ell));
        }
    }
    exceptional.sort();
    exceptional.dedup();

    let mut smallest = verdicts.iter().find(|v| !in_p(v)).map(|v| v.ell);
    if smallest.is_none() {
        // keep going past the scan bound; a prime outside P exists whenever
        // the tail is certified
        let mut l = scan_bound.max(1) + 1;
        let limit = scan_bound.saturating_mul(100).max(1000);
        while l <= limit {
            if is_prime_u64(l) && !in_p(&image_verdict_with(&reports, l, cfg)) {
                smallest = Some(l);
                break;
            }
            l += 1;
        }
    }

    let serre = serre_bound(&reports);
    let tate_tail = reports.iter().any(|r| {
        r.potential == Potential::PotentiallyMultiplicative
            && r.ord_j.is_some_and(|e| e != 0 && e.unsigned_abs() <= scan_bound.max(2))
    });
    let borel = cfg.tate_borel && borel_excluded(&reports);
    let serre_ok = cfg.serre && serre <= BigInt::from(scan_bound);
    let tail_certified = tate_tail && (borel || serre_ok) && unfactored.is_none();

    Ok(Theorem5Report {
        model: m,
        delta_prime: dp,
        delta_factorization: fact,
        reports,
        exceptional,
        smallest_applicable: smallest,
        scan_bound,
        verdicts,
        serre_bound: serre,
        tail_certified,
        unfactored,
        notes,
    })
}

/// The exceptional set as u64 where every member fits.
pub fn exceptional_u64(r: &Theorem5Report) -> Option<Vec<u64>> {
    r.exceptional.iter().map(|p| p.to_u64()).collect()
}
