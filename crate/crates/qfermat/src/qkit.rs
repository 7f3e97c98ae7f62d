//! Constructors for the named q-objects: q-integers, Gaussian binomials,
//! q-Pochhammer products, q-Fermat quotients, q-Delannoy numbers and
//! q-harmonic numbers.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::primes::is_prime;
use crate::quotient::{Residue, Ring};
use crate::rational::{rat, rat_int};
use std::collections::HashMap;

/// The q-integer [n] = 1 + q + ... + q^{n-1}; [0] = 0.
pub fn q_int(n: u64) -> LaurentPoly {
    LaurentPoly::from_terms((0..n as i64).map(|e| (e, rat_int(1))))
}

/// The q-Pochhammer symbol (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}).
pub fn poch(a: &LaurentPoly, n: u64) -> LaurentPoly {
    let one = LaurentPoly::one();
    let mut acc = one.clone();
    for j in 0..n as i64 {
        acc = acc.mul(&one.sub(&a.shift(j)));
    }
    acc
}

/// (-q;q)_n, the factor chain of the q-Fermat quotients.
pub fn poch_neg_q(n: u64) -> LaurentPoly {
    poch(&LaurentPoly::monomial(rat_int(-1), 1), n)
}

/// Memoized Gaussian binomial coefficients over the q-Pascal recurrence
/// [n k] = [n-1 k-1] + q^k [n-1 k].
///
/// The memo is the one mutable structure in the crate; instantiate one table
/// per task (or guard a shared one).
#[derive(Default)]
pub struct QBinomialTable {
    memo: HashMap<(u32, u32), LaurentPoly>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The Gaussian binomial [n k]; zero outside 0 <= k <= n.
    pub fn get(&mut self, n: u32, k: u32) -> LaurentPoly {
        if k > n {
            return LaurentPoly::zero();
        }
        let k = k.min(n - k); // symmetry halves the table
        if k == 0 {
            return LaurentPoly::one();
        }
        if let Some(hit) = self.memo.get(&(n, k)) {
            return hit.clone();
        }
        let left = self.get(n - 1, k - 1);
        let right = self.get(n - 1, k).shift(k as i64);
        let value = left.add(&right);
        self.memo.insert((n, k), value.clone());
        value
    }
}

/// One-off Gaussian binomial; sweeps should hold a [`QBinomialTable`].
pub fn q_binomial(n: u32, k: u32) -> LaurentPoly {
    QBinomialTable::new().get(n, k)
}

/// The central Gaussian binomials [2k k] for k = 0..=k_max, built by the
/// exact ratio recurrence [2k k] = [2k-2 k-1](1-q^{2k-1})(1-q^{2k})/(1-q^k)².
/// Much cheaper than the Pascal table when 2k is large.
pub fn central_q_binomials(k_max: u32) -> Vec<LaurentPoly> {
    let one = LaurentPoly::one();
    // a * (1 - q^e) as a merge of a with its shifted copy
    let mul_binom = |a: &LaurentPoly, e: i64| a.sub(&a.shift(e));
    let binom = |e: i64| one.sub(&LaurentPoly::monomial(rat_int(1), e));
    let mut out = Vec::with_capacity(k_max as usize + 1);
    out.push(LaurentPoly::one());
    for k in 1..=k_max as i64 {
        let prev = out.last().unwrap();
        let num = mul_binom(&mul_binom(prev, 2 * k - 1), 2 * k);
        let div = binom(k);
        let b = num
            .exact_div(&div)
            .and_then(|t| t.exact_div(&div))
            .expect("central q-binomial ratio recurrence divides exactly");
        out.push(b);
    }
    out
}

/// The q-Fermat quotient ((-q;q)_{p-1} - 1) / [p], an exact polynomial for
/// every odd prime p.
pub fn q_fermat_quotient(p: u64) -> Result<LaurentPoly> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    poch_neg_q(p - 1)
        .sub(&LaurentPoly::one())
        .exact_div(&q_int(p))
}

fn delannoy_sum(n: u32, weighted: bool) -> LaurentPoly {
    let mut table = QBinomialTable::new();
    let mut acc = LaurentPoly::zero();
    for k in 0..=n {
        let ki = k as i64;
        let mut term = table.get(n + k, 2 * k).mul(&table.get(2 * k, k));
        if weighted {
            // (1 + q^k)/2
            let w = LaurentPoly::from_terms([(0, rat(1, 2)), (ki, rat(1, 2))]);
            term = term.mul(&w);
        }
        acc = acc.add(&term.shift(ki * (ki - 1) / 2 - 2 * n as i64 * ki));
    }
    acc
}

/// The q-Delannoy number
/// D_n(q) = Σ_k (1+q^k)/2 [n+k 2k][2k k] q^{C(k,2)-2nk},
/// a Laurent polynomial with negative exponents for n >= 1.
pub fn q_delannoy(n: u32) -> LaurentPoly {
    delannoy_sum(n, true)
}

/// The unweighted variant D̄_n(q) (no (1+q^k)/2 factor).
pub fn q_delannoy_bar(n: u32) -> LaurentPoly {
    delannoy_sum(n, false)
}

/// The q-harmonic number H_n(q) = Σ_{k=1..n} 1/[k] as a residue; requires
/// every [k] to be invertible in the ring (true for n <= p-1 mod [p]).
pub fn q_harmonic_res(ring: &Ring, n: u64) -> Result<Residue> {
    let mut acc = ring.zero();
    for k in 1..=n {
        acc = acc.add(&ring.reduce(&q_int(k)).inv()?);
    }
    Ok(acc)
}

/// Whether [p] divides the central binomial [2k k], decided by exact Laurent
/// division. True for every (p-1)/2 < k < p by the q-Lucas theorem.
pub fn central_qbinom_divisible(p: u64, k: u32) -> bool {
    let central = central_q_binomials(k).pop().unwrap();
    central.exact_div(&q_int(p)).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::QuotientRing;
    use num_traits::{One, Signed};

    #[test]
    fn q_int_examples() {
        assert!(q_int(1).is_one());
        assert_eq!(q_int(3).to_string(), "1 + q + q^2");
        assert_eq!(q_int(7).eval(&rat_int(1)).unwrap(), rat_int(7));
        assert!(q_int(0).is_zero());
    }

    #[test]
    fn q_binomial_examples() {
        // [4 2] = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(q_binomial(4, 2).to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert!(q_binomial(9, 0).is_one());
        assert!(q_binomial(3, 5).is_zero());
        assert_eq!(q_binomial(6, 3).eval(&rat_int(1)).unwrap(), rat_int(20));
    }

    #[test]
    fn q_binomial_symmetry_and_positivity() {
        let mut table = QBinomialTable::new();
        for n in 0..=20u32 {
            for k in 0..=n {
                let b = table.get(n, k);
                assert_eq!(b, table.get(n, n - k), "symmetry at ({n},{k})");
                for (_, c) in b.terms() {
                    assert!(c.denom().is_one() && c.is_positive());
                }
            }
        }
    }

    #[test]
    fn q_binomial_matches_factorial_quotient() {
        // (q;q)_n / ((q;q)_k (q;q)_{n-k}) by exact division
        let qq = |n: u64| poch(&LaurentPoly::q(), n);
        for (n, k) in [(4u32, 2u32), (7, 3), (9, 4)] {
            let quotient = qq(n as u64)
                .exact_div(&qq(k as u64).mul(&qq((n - k) as u64)))
                .unwrap();
            assert_eq!(q_binomial(n, k), quotient);
        }
    }

    #[test]
    fn poch_examples() {
        let neg_q = LaurentPoly::monomial(rat_int(-1), 1);
        assert_eq!(poch(&neg_q, 2).to_string(), "1 + q + q^2 + q^3");
        assert!(poch(&LaurentPoly::from_int(5), 0).is_one());
        for n in 0..8u64 {
            assert_eq!(
                poch_neg_q(n).eval(&rat_int(1)).unwrap(),
                rat_int(1 << n),
                "(-q;q)_n at q=1 is 2^n"
            );
        }
        // (-1;q)_n = 2 (-q;q)_{n-1}
        let neg_one = LaurentPoly::from_int(-1);
        for n in 1..8u64 {
            assert_eq!(poch(&neg_one, n), poch_neg_q(n - 1).scale(&rat_int(2)));
        }
    }

    #[test]
    fn fermat_quotient_examples() {
        assert_eq!(q_fermat_quotient(3).unwrap(), LaurentPoly::q());
        assert_eq!(
            q_fermat_quotient(5).unwrap().eval(&rat_int(1)).unwrap(),
            rat_int(3) // (2^4 - 1)/5
        );
        // degree of the dividend, p(p-1)/2, minus the divisor degree p-1
        for p in [3i64, 5, 7] {
            assert_eq!(
                q_fermat_quotient(p as u64).unwrap().degree(),
                Some((p - 1) * (p - 2) / 2)
            );
        }
        assert_eq!(q_fermat_quotient(4), Err(Error::NotPrime(4)));
        // Fq(p) * [p] + 1 = (-q;q)_{p-1} exactly
        for p in [3u64, 5, 7, 11, 13] {
            let fq = q_fermat_quotient(p).unwrap();
            assert_eq!(
                fq.mul(&q_int(p)).add(&LaurentPoly::one()),
                poch_neg_q(p - 1)
            );
        }
    }

    /// Brute-force classical Delannoy numbers via the defining binomial sum.
    fn delannoy_classic(n: u64) -> u64 {
        fn comb(n: u64, k: u64) -> u64 {
            if k > n {
                return 0;
            }
            let mut acc = 1u64;
            for j in 0..k {
                acc = acc * (n - j) / (j + 1);
            }
            acc
        }
        (0..=n).map(|k| comb(n + k, 2 * k) * comb(2 * k, k)).sum()
    }

    #[test]
    fn delannoy_examples() {
        assert!(q_delannoy(0).is_one());
        let d1 = LaurentPoly::from_terms([(0, rat(3, 2)), (-1, rat_int(1)), (-2, rat(1, 2))]);
        assert_eq!(q_delannoy(1), d1);
        for n in 0..=4u32 {
            let expected = rat_int(delannoy_classic(n as u64) as i64);
            assert_eq!(q_delannoy(n).eval(&rat_int(1)).unwrap(), expected);
            assert_eq!(q_delannoy_bar(n).eval(&rat_int(1)).unwrap(), expected);
        }
        assert_eq!(
            [1, 3, 13, 63, 321].map(|d| rat_int(d)),
            [0u64, 1, 2, 3, 4].map(|n| rat_int(delannoy_classic(n) as i64))
        );
    }

    #[test]
    fn q_harmonic_examples() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        assert!(q_harmonic_res(&r3, 1).unwrap().eq(&r3.one()));
        // H_2 mod [3] = 1 + inv(1+q) = 1 - q, which is (p-1)(1-q)/2 at p=3
        let h2 = q_harmonic_res(&r3, 2).unwrap();
        let one_minus_q = r3.reduce(&LaurentPoly::one().sub(&LaurentPoly::q()));
        assert_eq!(h2, one_minus_q);
    }

    #[test]
    fn central_binomials_match_pascal_table() {
        let centrals = central_q_binomials(6);
        let mut table = QBinomialTable::new();
        for k in 0..=6u32 {
            assert_eq!(centrals[k as usize], table.get(2 * k, k));
        }
    }

    #[test]
    fn central_divisibility_examples() {
        // [4 2] = (1+q+q^2)(1+q^2)
        assert!(central_qbinom_divisible(3, 2));
        assert!(central_qbinom_divisible(5, 3));
        assert!(central_qbinom_divisible(5, 4));
        // outside the q-Lucas window the division fails
        assert!(!central_qbinom_divisible(5, 2));
    }

    #[test]
    fn qbinomial_mod_p_congruence() {
        // [p-1 k] = (-1)^k q^{-k(k+1)/2} mod [p]
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let ring = QuotientRing::for_prime(p, 1).unwrap();
            let mut table = QBinomialTable::new();
            for k in 1..p as u32 {
                let lhs = ring.reduce(&table.get(p as u32 - 1, k));
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let e = -(k as i64) * (k as i64 + 1) / 2;
                let rhs = ring.monomial(e).scale(&rat_int(sign));
                assert_eq!(lhs, rhs, "p={p}, k={k}");
            }
        }
    }
}
