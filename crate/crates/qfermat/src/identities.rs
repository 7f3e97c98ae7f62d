//! Symbolic verification of the exact q-series identities.
//!
//! Every verifier clears denominators with an explicit per-identity
//! multiplier and then compares polynomials structurally. The multi-sum left
//! sides are computed by a telescoping chain DP (one ring operation per
//! (level, index) pair); naive chain enumeration is retained as a test
//! oracle.

use crate::bivar::{pochhammer_x, BivarPoly};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qkit::QBinomialTable;
use crate::rational::{rat_int, Rational};
use crate::report::{Report, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::time::Instant;

/// Outcome of one identity check. A failed check carries the nonzero
/// difference as its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Verification {
    fn of_laurent(diff: LaurentPoly) -> Self {
        Verification {
            pass: diff.is_zero(),
            witness: (!diff.is_zero()).then(|| diff.to_string()),
        }
    }

    fn of_bivar(diff: BivarPoly) -> Self {
        Verification {
            pass: diff.is_zero(),
            witness: (!diff.is_zero()).then(|| diff.to_string()),
        }
    }
}

/// ∏_{j=1..n, j≠skip} (1 - q^j); skip = 0 keeps every factor, giving (q;q)_n.
fn qq_prod_skip(n: u32, skip: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in 1..=n as i64 {
        if j != skip as i64 {
            acc = acc.sub(&acc.shift(j));
        }
    }
    acc
}

/// The cleared chain factor g(k) = q^k (q;q)_n / (1-q^k), a polynomial.
fn chain_factor(n: u32, k: u32) -> LaurentPoly {
    qq_prod_skip(n, k).shift(k as i64)
}

/// Runs `f` over every weakly increasing chain lo <= k_1 <= ... <= k_m <= hi.
fn for_each_chain(lo: u32, hi: u32, m: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, lo: u32, hi: u32, left: u32, f: &mut impl FnMut(&[u32])) {
        if left == 0 {
            f(buf);
            return;
        }
        for k in lo..=hi {
            buf.push(k);
            rec(buf, k, hi, left - 1, f);
            buf.pop();
        }
    }
    rec(&mut Vec::new(), lo, hi, m, f);
}

/// Lagrange interpolation lemma: after multiplying by (x;q)_{n+1},
/// Σ_k (-1)^k [n k] q^{C(k+1,2)-rk} ∏_{j≠k}(1-xq^j) = (q;q)_n x^r.
pub fn verify_lagrange(n: u32, r: u32) -> Result<Verification> {
    if n < 1 || r > n {
        return Err(Error::InvalidParams(format!(
            "need n >= 1 and 0 <= r <= n, got n={n}, r={r}"
        )));
    }
    let mut table = QBinomialTable::new();
    let mut lhs = BivarPoly::zero();
    for k in 0..=n {
        let mut prod = BivarPoly::one();
        for j in 0..=n as i64 {
            if j != k as i64 {
                prod =
                    prod.sub(&prod.mul(&BivarPoly::term(1, LaurentPoly::monomial(rat_int(1), j))));
            }
        }
        let ki = k as i64;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let weight = table
            .get(n, k)
            .scale(&rat_int(sign))
            .shift(ki * (ki + 1) / 2 - r as i64 * ki);
        lhs = lhs.add(&prod.scale(&weight));
    }
    let rhs = BivarPoly::term(r, qq_prod_skip(n, 0));
    Ok(Verification::of_bivar(lhs.sub(&rhs)))
}

/// Both sides of the Van Hamme identity after multiplying by (q;q)_n.
fn van_hamme_sides(n: u32) -> (LaurentPoly, LaurentPoly) {
    let mut table = QBinomialTable::new();
    let mut lhs = LaurentPoly::zero();
    let mut rhs = LaurentPoly::zero();
    for k in 1..=n {
        let ki = k as i64;
        lhs = lhs.add(&chain_factor(n, k));
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let term = table
            .get(n, k)
            .scale(&rat_int(sign))
            .mul(&qq_prod_skip(n, k))
            .shift(ki * (ki + 1) / 2);
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

/// Van Hamme: Σ q^k/(1-q^k) = Σ (-1)^{k-1} [n k] q^{C(k+1,2)}/(1-q^k).
pub fn verify_van_hamme(n: u32) -> Result<Verification> {
    if n < 1 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let (lhs, rhs) = van_hamme_sides(n);
    Ok(Verification::of_laurent(lhs.sub(&rhs)))
}

/// Cleared left side of the Dilcher identity by the telescoping chain DP:
/// S_1(k) = g(k), S_i(k) = g(k) Σ_{l<=k} S_{i-1}(l), LHS = Σ_k S_m(k).
fn dilcher_lhs_dp(m: u32, n: u32) -> LaurentPoly {
    let g: Vec<LaurentPoly> = (1..=n).map(|k| chain_factor(n, k)).collect();
    let mut level = g.clone();
    for _ in 2..=m {
        let mut prefix = LaurentPoly::zero();
        let mut next = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            prefix = prefix.add(&level[k]);
            next.push(g[k].mul(&prefix));
        }
        level = next;
    }
    level.iter().fold(LaurentPoly::zero(), |acc, s| acc.add(s))
}

/// Both sides of the Dilcher identity cleared by (q;q)_n^m.
pub fn dilcher_sides(m: u32, n: u32) -> (LaurentPoly, LaurentPoly) {
    let mut table = QBinomialTable::new();
    let mut rhs = LaurentPoly::zero();
    for k in 1..=n {
        let ki = k as i64;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let term = table
            .get(n, k)
            .scale(&rat_int(sign))
            .mul(&qq_prod_skip(n, k).pow(m))
            .shift(ki * (ki - 1) / 2 + ki * m as i64);
        rhs = rhs.add(&term);
    }
    (dilcher_lhs_dp(m, n), rhs)
}

/// Dilcher's multi-sum identity, Van Hamme's generalization.
pub fn verify_dilcher(m: u32, n: u32) -> Result<Verification> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParams("need m, n >= 1".into()));
    }
    let (lhs, rhs) = dilcher_sides(m, n);
    Ok(Verification::of_laurent(lhs.sub(&rhs)))
}

/// Cleared left side of the x-extended Dilcher identity by the chain DP;
/// level 1 carries the (x;q)_{k_1} factor.
pub fn x_dilcher_lhs_dp(m: u32, n: u32) -> BivarPoly {
    let g: Vec<LaurentPoly> = (1..=n).map(|k| chain_factor(n, k)).collect();
    let mut level: Vec<BivarPoly> = (1..=n)
        .map(|k| pochhammer_x(k).scale(&g[k as usize - 1]))
        .collect();
    for _ in 2..=m {
        let mut prefix = BivarPoly::zero();
        let mut next = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            prefix = prefix.add(&level[k]);
            next.push(prefix.scale(&g[k]));
        }
        level = next;
    }
    level.iter().fold(BivarPoly::zero(), |acc, s| acc.add(s))
}

/// The same cleared left side by brute-force enumeration over all chains
/// k_1 <= ... <= k_m — the test oracle for the DP.
pub fn x_dilcher_lhs_enumeration(m: u32, n: u32) -> BivarPoly {
    let mut acc = BivarPoly::zero();
    for_each_chain(1, n, m, &mut |chain| {
        let mut term = pochhammer_x(chain[0]);
        for &k in chain {
            term = term.scale(&chain_factor(n, k));
        }
        acc = acc.add(&term);
    });
    acc
}

/// Both sides of the x-extended Dilcher identity cleared by (q;q)_n^m.
pub fn x_dilcher_sides(m: u32, n: u32) -> (BivarPoly, BivarPoly) {
    let mut table = QBinomialTable::new();
    let mut rhs = BivarPoly::zero();
    for k in 1..=n {
        let ki = k as i64;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let weight = table
            .get(n, k)
            .scale(&rat_int(sign))
            .mul(&qq_prod_skip(n, k).pow(m))
            .shift(ki * (ki - 1) / 2 + ki * m as i64);
        rhs = rhs.add(&BivarPoly::x_pow_minus_one(k).scale(&weight));
    }
    (x_dilcher_lhs_dp(m, n), rhs)
}

/// The x-extension of Dilcher's identity:
/// Σ_{k1<=...<=km} (x;q)_{k1} q^{Σki}/∏(1-q^{ki})
///   = Σ_k (-1)^k [n k] q^{C(k,2)+km}/(1-q^k)^m (x^k - 1).
pub fn verify_x_dilcher(m: u32, n: u32) -> Result<Verification> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParams("need m, n >= 1".into()));
    }
    let (lhs, rhs) = x_dilcher_sides(m, n);
    Ok(Verification::of_bivar(lhs.sub(&rhs)))
}

/// The m = 1 corollary, verified independently by direct expansion.
pub fn verify_q_kohnen(n: u32) -> Result<Verification> {
    if n < 1 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let mut table = QBinomialTable::new();
    let mut lhs = BivarPoly::zero();
    let mut rhs = BivarPoly::zero();
    for k in 1..=n {
        let ki = k as i64;
        lhs = lhs.add(&pochhammer_x(k).scale(&chain_factor(n, k)));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let weight = table
            .get(n, k)
            .scale(&rat_int(sign))
            .mul(&qq_prod_skip(n, k))
            .shift(ki * (ki + 1) / 2);
        rhs = rhs.add(&BivarPoly::x_pow_minus_one(k).scale(&weight));
    }
    Ok(Verification::of_bivar(lhs.sub(&rhs)))
}

fn binomial_int(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k as u64 {
        acc = acc * BigInt::from(n as u64 - j) / BigInt::from(j + 1);
    }
    acc
}

/// Kohnen's binomial identity over plain rationals:
/// Σ (1-x)^k/k = Σ (-1)^k/k C(n,k) (x^k - 1), cleared by lcm(1..n).
pub fn verify_kohnen_binomial(n: u32) -> Result<Verification> {
    if n < 1 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let mut lcm = BigInt::one();
    for k in 2..=n {
        lcm = lcm.lcm(&BigInt::from(k));
    }
    let one_minus_x = BivarPoly::one().sub(&BivarPoly::x());
    let mut lhs = BivarPoly::zero();
    let mut rhs = BivarPoly::zero();
    let mut pow = BivarPoly::one();
    for k in 1..=n {
        pow = pow.mul(&one_minus_x);
        let over_k = Rational::new(lcm.clone(), BigInt::from(k));
        lhs = lhs.add(&pow.scale(&LaurentPoly::constant(over_k.clone())));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = LaurentPoly::constant(
            over_k * rat_int(sign) * Rational::from_integer(binomial_int(n, k)),
        );
        rhs = rhs.add(&BivarPoly::x_pow_minus_one(k).scale(&c));
    }
    Ok(Verification::of_bivar(lhs.sub(&rhs)))
}

/// The nested-sum coefficient lemma: the chain sum over r <= k_1 <= ... <= k_m <= n
/// of [k_1 r] ∏ q^{k_i}/(1-q^{k_i}) collapses to q^{mr} [n r]/(1-q^r)^m.
/// The left side is computed by naive enumeration; both sides are cleared by
/// (q;q)_n^m.
pub fn verify_chain_coeff(m: u32, n: u32, r: u32) -> Result<Verification> {
    if m < 1 || r < 1 || r > n {
        return Err(Error::InvalidParams(format!(
            "need m >= 1 and 1 <= r <= n, got m={m}, n={n}, r={r}"
        )));
    }
    let mut table = QBinomialTable::new();
    let mut lhs = LaurentPoly::zero();
    for_each_chain(r, n, m, &mut |chain| {
        let mut term = table.get(chain[0], r);
        for &k in chain {
            term = term.mul(&chain_factor(n, k));
        }
        lhs = lhs.add(&term);
    });
    let rhs = table
        .get(n, r)
        .mul(&qq_prod_skip(n, r).pow(m))
        .shift(m as i64 * r as i64);
    Ok(Verification::of_laurent(lhs.sub(&rhs)))
}

/// The single-step telescoping lemma:
/// Σ_{k1=r..k2} [k1 r] q^{k1}/(1-q^{k1}) = [k2 r] q^r/(1-q^r),
/// cleared by (q;q)_{k2}.
pub fn verify_prefix_lemma(r: u32, k2: u32) -> Result<Verification> {
    if r < 1 || r > k2 {
        return Err(Error::InvalidParams(format!(
            "need 1 <= r <= k2, got r={r}, k2={k2}"
        )));
    }
    let mut table = QBinomialTable::new();
    let mut lhs = LaurentPoly::zero();
    for k1 in r..=k2 {
        lhs = lhs.add(&table.get(k1, r).mul(&chain_factor(k2, k1)));
    }
    let rhs = table.get(k2, r).mul(&chain_factor(k2, r));
    Ok(Verification::of_laurent(lhs.sub(&rhs)))
}

pub const IDENTITY_IDS: [&str; 8] = [
    "lagrange",
    "van-hamme",
    "dilcher",
    "x-dilcher",
    "q-kohnen",
    "kohnen-binomial",
    "chain-coeff",
    "prefix-lemma",
];

pub fn identity_ids() -> Vec<&'static str> {
    IDENTITY_IDS.to_vec()
}

fn to_report(
    id: &str,
    params: &[(&str, i64)],
    outcome: Result<Verification>,
    t: Instant,
) -> Report {
    let params: BTreeMap<String, i64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let (status, witness) = match outcome {
        Ok(v) if v.pass => (Status::Pass, None),
        Ok(v) => (Status::Fail, v.witness),
        Err(e) => (Status::Error, Some(e.to_string())),
    };
    Report {
        case: id.to_string(),
        prime: None,
        params,
        status,
        witness,
        millis: t.elapsed().as_millis() as u64,
    }
}

/// Sweeps one identity (or all of them for `"all"`) over its parameter grid,
/// capped by `n_max` and `m_max`.
pub fn run_identity(id: &str, n_max: u32, m_max: u32) -> Result<Vec<Report>> {
    if id == "all" {
        let mut out = Vec::new();
        for id in IDENTITY_IDS {
            out.extend(run_identity(id, n_max, m_max)?);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    match id {
        "lagrange" => {
            for n in 1..=n_max {
                for r in 0..=n {
                    let t = Instant::now();
                    let v = verify_lagrange(n, r);
                    out.push(to_report(id, &[("n", n as i64), ("r", r as i64)], v, t));
                }
            }
        }
        "van-hamme" => {
            for n in 1..=n_max {
                let t = Instant::now();
                out.push(to_report(id, &[("n", n as i64)], verify_van_hamme(n), t));
            }
        }
        "dilcher" => {
            for m in 1..=m_max {
                for n in 1..=n_max {
                    let t = Instant::now();
                    let v = verify_dilcher(m, n);
                    out.push(to_report(id, &[("m", m as i64), ("n", n as i64)], v, t));
                }
            }
        }
        "x-dilcher" => {
            for m in 1..=m_max {
                for n in 1..=n_max {
                    let t = Instant::now();
                    let v = verify_x_dilcher(m, n);
                    out.push(to_report(id, &[("m", m as i64), ("n", n as i64)], v, t));
                }
            }
        }
        "q-kohnen" => {
            for n in 1..=n_max {
                let t = Instant::now();
                out.push(to_report(id, &[("n", n as i64)], verify_q_kohnen(n), t));
            }
        }
        "kohnen-binomial" => {
            for n in 1..=n_max {
                let t = Instant::now();
                let v = verify_kohnen_binomial(n);
                out.push(to_report(id, &[("n", n as i64)], v, t));
            }
        }
        "chain-coeff" => {
            for m in 1..=m_max {
                for n in 1..=n_max {
                    for r in 1..=n {
                        let t = Instant::now();
                        let v = verify_chain_coeff(m, n, r);
                        out.push(to_report(
                            id,
                            &[("m", m as i64), ("n", n as i64), ("r", r as i64)],
                            v,
                            t,
                        ));
                    }
                }
            }
        }
        "prefix-lemma" => {
            for k2 in 1..=n_max {
                for r in 1..=k2 {
                    let t = Instant::now();
                    let v = verify_prefix_lemma(r, k2);
                    out.push(to_report(id, &[("k2", k2 as i64), ("r", r as i64)], v, t));
                }
            }
        }
        other => return Err(Error::UnknownCase(other.to_string())),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn passes(v: Result<Verification>) -> bool {
        v.unwrap().pass
    }

    #[test]
    fn lagrange_small_cases() {
        // (1-xq) - q(1-x) = 1-q and (1-xq) - (1-x) = (1-q)x
        assert!(passes(verify_lagrange(1, 0)));
        assert!(passes(verify_lagrange(1, 1)));
        for n in 1..=5 {
            for r in 0..=n {
                assert!(passes(verify_lagrange(n, r)), "lagrange ({n},{r})");
            }
        }
        assert!(verify_lagrange(2, 3).is_err());
    }

    #[test]
    fn van_hamme_small_cases() {
        for n in 1..=6 {
            assert!(passes(verify_van_hamme(n)), "van hamme n={n}");
        }
        assert!(verify_van_hamme(0).is_err());
    }

    #[test]
    fn dilcher_small_cases() {
        assert!(passes(verify_dilcher(2, 2)));
        for n in 1..=5 {
            // m=1 specializes to Van Hamme
            let (l1, r1) = dilcher_sides(1, n);
            let (lv, rv) = van_hamme_sides(n);
            assert_eq!(l1, lv);
            assert_eq!(r1, rv);
            for m in 1..=3 {
                assert!(passes(verify_dilcher(m, n)), "dilcher ({m},{n})");
            }
        }
    }

    #[test]
    fn x_dilcher_small_cases() {
        for m in 1..=3 {
            for n in 1..=4 {
                assert!(passes(verify_x_dilcher(m, n)), "x-dilcher ({m},{n})");
            }
        }
    }

    #[test]
    fn x_dilcher_coefficients_match_closed_form() {
        // coefficient of x^r in the cleared LHS is
        // (-1)^r q^{C(r,2)+mr} [n r] ((q;q)_n/(1-q^r))^m
        let mut table = QBinomialTable::new();
        for (m, n) in [(1u32, 4u32), (2, 3), (3, 3)] {
            let (lhs, _) = x_dilcher_sides(m, n);
            for r in 1..=n {
                let ri = r as i64;
                let sign = if r % 2 == 0 { 1 } else { -1 };
                let expected = table
                    .get(n, r)
                    .scale(&rat_int(sign))
                    .mul(&qq_prod_skip(n, r).pow(m))
                    .shift(ri * (ri - 1) / 2 + ri * m as i64);
                assert_eq!(lhs.coeff_x(r), expected, "m={m}, n={n}, r={r}");
            }
        }
    }

    #[test]
    fn x_dilcher_specializations() {
        for (m, n) in [(1u32, 3u32), (2, 3), (3, 2)] {
            let (lhs, rhs) = x_dilcher_sides(m, n);
            // x = 1 kills both sides
            assert!(lhs.eval_x(&LaurentPoly::one()).is_zero());
            assert!(rhs.eval_x(&LaurentPoly::one()).is_zero());
            // x = 0 reduces to the Dilcher identity
            let (dl, dr) = dilcher_sides(m, n);
            assert_eq!(lhs.eval_x(&LaurentPoly::zero()), dl);
            assert_eq!(rhs.eval_x(&LaurentPoly::zero()), dr);
        }
    }

    #[test]
    fn chain_dp_matches_enumeration() {
        for m in 1..=3 {
            for n in 1..=5 {
                assert_eq!(
                    x_dilcher_lhs_dp(m, n),
                    x_dilcher_lhs_enumeration(m, n),
                    "chain DP vs enumeration at m={m}, n={n}"
                );
            }
        }
    }

    #[test]
    fn q_kohnen_small_cases() {
        for n in 1..=6 {
            assert!(passes(verify_q_kohnen(n)), "q-kohnen n={n}");
            // outcome agrees with the m=1 x-Dilcher specialization
            assert_eq!(
                verify_q_kohnen(n).unwrap().pass,
                verify_x_dilcher(1, n).unwrap().pass
            );
        }
    }

    #[test]
    fn kohnen_binomial_small_cases() {
        for n in 1..=8 {
            assert!(passes(verify_kohnen_binomial(n)), "kohnen binomial n={n}");
        }
    }

    #[test]
    fn chain_coeff_small_cases() {
        assert!(passes(verify_chain_coeff(2, 3, 2)));
        for m in 1..=3 {
            for n in 1..=4 {
                for r in 1..=n {
                    assert!(passes(verify_chain_coeff(m, n, r)), "({m},{n},{r})");
                }
            }
        }
        assert!(verify_chain_coeff(1, 2, 3).is_err());
    }

    #[test]
    fn prefix_lemma_small_cases() {
        // single-term case r = k2 and the three-term telescoping (1,3)
        assert!(passes(verify_prefix_lemma(3, 3)));
        assert!(passes(verify_prefix_lemma(1, 3)));
        for k2 in 1..=6 {
            for r in 1..=k2 {
                assert!(passes(verify_prefix_lemma(r, k2)), "({r},{k2})");
            }
        }
    }

    #[test]
    fn registry_sweeps() {
        let reports = run_identity("all", 3, 2).unwrap();
        assert!(reports.iter().all(|r| r.status == Status::Pass));
        assert!(reports.iter().all(|r| r.prime.is_none()));
        assert!(run_identity("nope", 3, 2).is_err());
    }
}
