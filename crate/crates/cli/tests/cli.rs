mod common;

use common::*;
use serde_json::json;

#[test]
fn symbolic_f1() {
    let r = sha_scope(&["divpoly", "--n", "1", "--symbolic"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["poly"], json!("1"));
}

#[test]
fn symbolic_f4() {
    let r = sha_scope(&["divpoly", "--n", "4", "--symbolic"]);
    let v = r.json();
    assert_eq!(v["degree"], json!(6));
    assert_eq!(v["leading_coefficient"], json!("4"));
    assert_eq!(
        v["poly"],
        json!("4*X^6 + 20*A*X^4 + 80*B*X^3 - 20*A^2*X^2 - 16*A*B*X - 4*A^3 - 32*B^2")
    );
}

#[test]
fn numeric_divpoly() {
    let r = sha_scope(&["divpoly", "--n", "3", "--curve", "0,1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["poly"], json!("3*X^4 + 12*X"));
}

#[test]
fn exceptional_set_of_curve_2_23() {
    let r = sha_scope(&["exceptional", "--curve", CURVE_2_23_MIN]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(r#""exceptional_set":[2,3,5,7,13,23]"#), "{}", r.stdout);
    assert_eq!(r.json()["smallest_applicable"], json!(11));
}

#[test]
fn ffgroup_mod7() {
    let r = sha_scope(&["ffgroup", "--p", "7", "--ell", "5", "--curve", CURVE_2_23_MIN]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["order"], json!(10));
    assert_eq!(v["ell_primary"]["cyclic"], json!(true));
    assert_eq!(
        v["ell_primary"]["points_by_order"],
        json!([{"order": 5, "points": [[1, 3], [1, 4], [5, 3], [5, 4]]}])
    );
}

#[test]
fn curve_with_equals_sign() {
    let a = sha_scope(&["torsion", "--curve=-1,1"]);
    let b = sha_scope(&["torsion", "--curve", "-1,1"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_flag_is_usage_error() {
    let r = sha_scope(&["invariants", "--curve", "1,1", "--frobnicate"]);
    assert_eq!(r.code, 64);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("Usage"));
}

#[test]
fn unknown_subcommand() {
    assert_eq!(sha_scope(&["frobnicate"]).code, 64);
    assert_eq!(sha_scope(&[]).code, 64);
}

#[test]
fn non_integer_curve_rejected() {
    assert_eq!(sha_scope(&["invariants", "--curve", "1.5,2"]).code, 64);
    assert_eq!(sha_scope(&["invariants", "--curve", "1,2,3"]).code, 64);
    assert_eq!(sha_scope(&["invariants", "--curve", "1/2,2"]).code, 64);
}

#[test]
fn missing_curve() {
    let r = sha_scope(&["torsion"]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("--curve"));
}

#[test]
fn help_and_version_exit_zero() {
    let h = sha_scope(&["--help"]);
    assert_eq!(h.code, 0);
    assert!(h.stdout.contains("exceptional"));
    assert_eq!(sha_scope(&["--version"]).code, 0);
}

#[test]
fn singular_curve_is_domain_error() {
    let r = sha_scope(&["invariants", "--curve", "-3,2"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], json!("singular"));
}

#[test]
fn bad_reduction_is_domain_error() {
    let r = sha_scope(&["ffgroup", "--p", "23", "--curve", CURVE_2_23_MIN]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], json!("bad_reduction"));
}

#[test]
fn domain_errors() {
    assert_eq!(sha_scope(&["reduce", "--p", "15", "--curve", "1,1"]).code, 2);
    assert_eq!(sha_scope(&["alpha-trace", "--ell", "3", "--n", "1", "--curve", "1,1"]).code, 2);
    assert_eq!(sha_scope(&["lift", "--p", "5", "--ell", "5", "--curve", "1,1"]).code, 2);
}

#[test]
fn divpoly_ceiling_is_budget_error() {
    let r = sha_scope(&["divpoly", "--n", "100", "--curve", "1,1"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"]["kind"], json!("ceiling"));
}

#[test]
fn factoring_budget_exhaustion() {
    // minimization is trivial (gcd(A³, B²) = 1) but Δ′ has a large composite cofactor
    let r = sha_scope(&["exceptional", "--effort", "10", "--curve", "1,123456789012345678901234567891"]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["complete"], json!(false));
    assert!(v["unfactored"].is_string());
}

#[test]
fn invariants_budget_error_reports_cofactor() {
    let r = sha_scope(&[
        "invariants",
        "--effort",
        "10",
        "--curve",
        "0,1000000000000000000000000000000000000000000000000000001",
    ]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    let e = &r.json()["error"];
    assert_eq!(e["kind"], json!("incomplete_factorization"));
    assert!(e["unfactored"].is_string());
}

#[test]
fn reduce_reports_kind() {
    let r = sha_scope(&["reduce", "--p", "2", "--curve", CURVE_2_23_MIN]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["ord_delta"], json!(7));
    assert_eq!(v["potential"], json!("potentially_multiplicative"));
    let g = sha_scope(&["reduce", "--p", "5", "--curve", CURVE_2_23_MIN]).json();
    assert_eq!(g["kind"], json!("good"));
}

#[test]
fn bad_primes_list() {
    let v = sha_scope(&["bad-primes", "--curve", CURVE_2_23_MIN]).json();
    let ps: Vec<_> = v["bad_primes"].as_array().unwrap().iter().map(|r| r["p"].clone()).collect();
    assert_eq!(ps, vec![json!(2), json!(23)]);
}

#[test]
fn torsion_of_x3_plus_1() {
    let v = sha_scope(&["torsion", "--curve", "0,1"]).json();
    assert_eq!(v["structure"], json!("Z/6"));
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
}

#[test]
fn cor_traces_values() {
    let v = sha_scope(&["cor-traces", "--ell", "7", "--n", "1", "--lambda", "2", "--curve", "1,1"]).json();
    assert_eq!(v["phi"]["coefficient"], json!("-98"));
    assert_eq!(v["phi"]["holds"], json!(true));
    assert_eq!(v["root_sum_zero"], json!(true));
    assert_eq!(v["g_degree"], json!(24));
    let s = sha_scope(&["cor-traces", "--ell", "3", "--n", "1", "--curve", "1,1"]).json();
    assert_eq!(s["phi"]["lambda"], json!("symbolic"));
    assert_eq!(s["phi"]["holds"], json!(true));
}

#[test]
fn alpha_trace_level_one() {
    let v = sha_scope(&["alpha-trace", "--ell", "7", "--n", "1", "--curve", "4,4"]).json();
    assert_eq!(v["degree"], json!(24));
    assert_eq!(v["s"], json!("0"));
    assert_eq!(v["bounds_hold"], json!(true));
}

#[test]
fn lift_trivial_plan() {
    let v = sha_scope(&["lift", "--p", "11", "--ell", "5", "--curve", "4,4"]).json();
    assert_eq!(v["n"], json!(0));
    assert_eq!(v["lift"], json!(null));
    assert_eq!(v["replay"]["decomposition_holds"], json!(true));
}

#[test]
fn verify_identities_small() {
    let r = sha_scope(&["verify-identities", "--max-n", "6"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["all_hold"], json!(true));
    assert_eq!(v["families"][0]["checked"].as_array().unwrap().len(), 6);
}

#[test]
fn large_integers_are_strings() {
    let v = sha_scope(&["invariants", "--curve", PRODUCT_CURVE_LONG]).json();
    assert!(v["invariants"]["delta"].is_string());
    assert!(v["invariants"]["b2"].is_number());
    assert!(v["invariants"]["j"].is_string());
}

#[test]
fn mazur_chain_flag() {
    let v = sha_scope(&["exceptional", "--mazur-chain", "--curve", CURVE_2_23_MIN]).json();
    assert_eq!(v["exceptional_set"], json!([2, 3, 5, 7, 13, 23]));
    let limit = sha_scope(&["exceptional", "--verdict-limit", "10", "--curve", CURVE_2_23_MIN]).json();
    assert_eq!(limit["verdicts"].as_array().unwrap().len(), 4);
}
