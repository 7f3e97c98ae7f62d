//! Browser bindings for the verification engine: build q-objects, check a
//! congruence at a prime, verify an identity. Every function returns a JSON
//! string so the page stays a thin static shell.

use qfermat::congruences;
use qfermat::identities;
use qfermat::qkit;
use qfermat::rational::rat_int;
use wasm_bindgen::prelude::wasm_bindgen;

fn err(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "ok": false, "error": msg.to_string() }).to_string()
}

/// The case ids and identity ids, for populating the page's selectors.
#[wasm_bindgen]
pub fn catalog() -> String {
    serde_json::json!({
        "congruences": congruences::case_ids(),
        "identities": identities::identity_ids(),
        "objects": ["q-int", "q-binomial", "q-pochhammer", "q-fermat-quotient",
                    "q-delannoy", "q-delannoy-bar"],
    })
    .to_string()
}

/// Builds one named q-object as an exact Laurent polynomial and renders it,
/// together with its value at q = 1. `a` and `b` are the object's integer
/// parameters (n, or n and k, or the prime p).
#[wasm_bindgen]
pub fn q_object(kind: &str, a: u32, b: u32) -> String {
    if a > 64 || b > 64 {
        return err("parameters are capped at 64 in the demo");
    }
    let poly = match kind {
        "q-int" => qkit::q_int(a as u64),
        "q-binomial" => qkit::q_binomial(a, b),
        "q-pochhammer" => qkit::poch_neg_q(a as u64),
        "q-fermat-quotient" => match qkit::q_fermat_quotient(a as u64) {
            Ok(p) => p,
            Err(e) => return err(e),
        },
        "q-delannoy" => qkit::q_delannoy(a),
        "q-delannoy-bar" => qkit::q_delannoy_bar(a),
        other => return err(format!("unknown object kind `{other}`")),
    };
    let at_one = poly
        .eval(&rat_int(1))
        .map(|v| v.to_string())
        .unwrap_or_default();
    serde_json::json!({
        "ok": true,
        "text": poly.to_string(),
        "terms": poly.num_terms(),
        "degree": poly.degree(),
        "min_exp": poly.min_exp(),
        "at_q1": at_one,
    })
    .to_string()
}

/// Runs one q-congruence case at one prime (m is the chain length for the
/// parameterized case) and returns the report.
#[wasm_bindgen]
pub fn check_congruence(id: &str, p: u32, m: u32) -> String {
    if p > 199 {
        return err("primes are capped at 199 in the demo");
    }
    if !(1..=6).contains(&m) {
        return err("m must lie in 1..6");
    }
    match congruences::verify_case(id, p as u64, Some(m)) {
        Ok(report) => serde_json::to_string(&report).unwrap_or_else(err),
        Err(e) => err(e),
    }
}

/// Verifies one identity instance. Parameter meaning varies by identity:
/// lagrange (n, r), van-hamme (n), dilcher and x-dilcher (m, n),
/// q-kohnen (n), kohnen-binomial (n), chain-coeff (m, n, r),
/// prefix-lemma (r, k2 = n).
#[wasm_bindgen]
pub fn check_identity(id: &str, m: u32, n: u32, r: u32) -> String {
    if n > 12 || m > 4 || r > 12 {
        return err("identity parameters are capped at m <= 4, n <= 12");
    }
    let outcome = match id {
        "lagrange" => identities::verify_lagrange(n, r),
        "van-hamme" => identities::verify_van_hamme(n),
        "dilcher" => identities::verify_dilcher(m, n),
        "x-dilcher" => identities::verify_x_dilcher(m, n),
        "q-kohnen" => identities::verify_q_kohnen(n),
        "kohnen-binomial" => identities::verify_kohnen_binomial(n),
        "chain-coeff" => identities::verify_chain_coeff(m, n, r),
        "prefix-lemma" => identities::verify_prefix_lemma(r, n),
        other => return err(format!("unknown identity `{other}`")),
    };
    match outcome {
        Ok(v) => serde_json::json!({
            "ok": true,
            "pass": v.pass,
            "witness": v.witness,
        })
        .to_string(),
        Err(e) => err(e),
    }
}
