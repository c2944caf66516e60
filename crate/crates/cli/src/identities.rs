//! The symbolic identity suite behind `verify-identities`.

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha_scope_core::curves::ShortModel;
use sha_scope_core::divpoly::{f_degree, verify_eq46, DivisionTable};
use sha_scope_core::numfield::{cor6_check, cor7_check, Lambda};
use sha_scope_core::poly::Ring;
use sha_scope_core::sym::Sym;
use sha_scope_core::Result;

use crate::json::{obj, short};

pub struct Family {
    pub name: &'static str,
    pub checked: Vec<Value>,
    pub failed: Vec<Value>,
}

impl Family {
    fn new(name: &'static str) -> Family {
        Family { name, checked: vec![], failed: vec![] }
    }

    fn record(&mut self, params: Value, ok: bool) {
        if !ok {
            self.failed.push(params.clone());
        }
        self.checked.push(params);
    }

    pub fn to_json(&self) -> Value {
        obj(vec![
            ("name", json!(self.name)),
            ("checked", Value::Array(self.checked.clone())),
            ("failed", Value::Array(self.failed.clone())),
            ("holds", json!(self.failed.is_empty())),
        ])
    }
}

pub fn desk_curves() -> Vec<ShortModel> {
    vec![ShortModel::new(1, 1), ShortModel::new(4, 4), ShortModel::new(-1, 1)]
}

/// Degree d, leading coefficient `lc` and a vanishing X^{d−1} coefficient.
fn leading_shape(p: &sha_scope_core::poly::Poly<Sym>, d: usize, lc: Sym) -> bool {
    p.degree() == Some(d) && p.lc() == lc && (d == 0 || p.coeff(d - 1).is_zero_elem())
}

pub fn run(max_n: u32, extra: Option<&ShortModel>) -> Result<Vec<Family>> {
    let mut t = DivisionTable::<Sym>::symbolic();

    let mut lead = Family::new("division_poly_leading_terms");
    for n in 1..=max_n as i64 {
        let ok = t.check_lemma5(n)? && t.f(n)?.degree() == Some(f_degree(n as u64));
        lead.record(json!(n), ok);
    }

    let mut resultant = Family::new("resultant_identity");
    resultant.record(json!("symbolic"), verify_eq46(&Sym::a(), &Sym::b()));

    let mut psi_sq = Family::new("psi_squared_leading_terms");
    for n in 1..=max_n.min(12) as i64 {
        let p = t.psi_squared(n)?;
        psi_sq.record(json!(n), leading_shape(&p, (n * n - 1) as usize, Sym::int(n * n)));
    }

    let mut quotient = Family::new("quotient_leading_terms");
    for (ell, n) in [(3u64, 2u32), (5, 2)] {
        let g = t.quotient_g(ell, n)?;
        let d = ((ell.pow(2 * n) - ell.pow(2 * n - 2)) / 2) as usize;
        quotient.record(json!([ell, n]), leading_shape(&g, d, Sym::int(ell as i64)));
    }

    let mut phi = Family::new("phi_root_sum");
    for m in 1..=max_n.min(11) as i64 {
        let p = t.build_phi(m, &Sym::lambda())?;
        let d = (m * m) as usize;
        let want = Sym::lambda().times(&Sym::int(-m * m));
        let ok = p.degree() == Some(d) && p.lc() == Sym::int(1) && p.coeff(d - 1) == want;
        phi.record(json!(m), ok);
    }

    let mut root_sum = Family::new("torsion_x_root_sum_zero");
    let mut curves = desk_curves();
    if let Some(m) = extra {
        if !curves.contains(m) {
            curves.push(m.clone());
        }
    }
    for m in &curves {
        for (ell, n) in [(5u64, 1u32), (7, 1), (11, 1), (13, 1), (5, 2)] {
            let ok = cor6_check(m, ell, n)?;
            root_sum.record(obj(vec![("curve", short(m)), ("ell", json!(ell)), ("n", json!(n))]), ok);
        }
    }

    let mut phi_ell = Family::new("phi_ell_root_sum");
    let any = ShortModel::new(BigInt::from(0), BigInt::from(1));
    for ell in [3u64, 5, 7] {
        phi_ell.record(json!(ell), cor7_check(&any, ell, &Lambda::Symbolic)?);
    }

    Ok(vec![lead, resultant, psi_sq, quotient, phi, root_sum, phi_ell])
}
