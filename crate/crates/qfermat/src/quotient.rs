//! Arithmetic in Q[q]/(f) — the congruence arena "(mod [p])" and "(mod [p]²)".
//!
//! A [`QuotientRing`] is immutable after construction and shared behind an
//! `Arc`; [`Residue`] values are immutable. Operations on residues from
//! different rings panic with a "ring mismatch" message.
//!
//! Internally a residue stores one big-integer numerator per coefficient over
//! a single common denominator (canonical: positive denominator, content
//! coprime to it, the zero residue has denominator 1). This is the unique
//! reduced remainder the spec of the ring demands; per-coefficient rationals
//! are available through [`Residue::coeff`] and [`Residue::coeffs`].

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::primes::is_prime;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Shared handle to a quotient ring.
pub type Ring = Arc<QuotientRing>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RingKind {
    /// Modulus is the p-th cyclotomic polynomial [p]; reduction folds
    /// exponents with q^p = 1.
    CyclotomicPrime(u64),
    /// Anything else (notably [p]²); reduction is polynomial long division.
    General,
}

#[derive(Debug)]
pub struct QuotientRing {
    modulus: LaurentPoly,
    /// Dense modulus coefficients scaled to integers: modulus = m_num / m_den.
    m_num: Vec<BigInt>,
    m_den: BigInt,
    degree: usize,
    kind: RingKind,
    /// For `qr_for_prime`, the prime and the power of [p] used.
    prime: Option<(u64, u8)>,
    /// Reduced representation of q^{-1}, precomputed at construction.
    inv_q_num: Vec<BigInt>,
    inv_q_den: BigInt,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl QuotientRing {
    /// The ring Q[q]/([p]) (power 1) or Q[q]/([p]²) (power 2).
    pub fn for_prime(p: u64, power: u8) -> Result<Ring> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(power == 1 || power == 2, "modulus power must be 1 or 2");
        let qint_p =
            LaurentPoly::from_terms((0..p as i64).map(|e| (e, crate::rational::rat_int(1))));
        let modulus = if power == 1 {
            qint_p.clone()
        } else {
            qint_p.mul(&qint_p)
        };
        let kind = if power == 1 {
            RingKind::CyclotomicPrime(p)
        } else {
            RingKind::General
        };
        Ok(Self::build(modulus, kind, Some((p, power))))
    }

    /// A general quotient ring. The modulus must have minimum exponent 0,
    /// degree at least 1 and a nonzero constant term (so q is invertible).
    pub fn new(modulus: LaurentPoly) -> Result<Ring> {
        if modulus.min_exp() != Some(0) || modulus.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidParams(
                "modulus must have minimum exponent 0 and degree >= 1".into(),
            ));
        }
        if modulus.coeff(0).is_zero() {
            return Err(Error::InvalidParams(
                "modulus must have a nonzero constant term".into(),
            ));
        }
        Ok(Self::build(modulus, RingKind::General, None))
    }

    fn build(modulus: LaurentPoly, kind: RingKind, prime: Option<(u64, u8)>) -> Ring {
        let degree = modulus.degree().unwrap() as usize;
        // clear coefficient denominators once
        let mut m_den = BigInt::one();
        for (_, c) in modulus.terms() {
            m_den = m_den.lcm(c.denom());
        }
        let mut m_num = vec![BigInt::zero(); degree + 1];
        for (e, c) in modulus.terms() {
            m_num[e as usize] = c.numer() * (&m_den / c.denom());
        }
        let mut ring = QuotientRing {
            modulus,
            m_num,
            m_den,
            degree,
            kind,
            prime,
            inv_q_num: Vec::new(),
            inv_q_den: BigInt::one(),
        };
        // precompute q^{-1}: analytically q^{p-1} for [p], extended Euclid
        // otherwise
        match kind {
            RingKind::CyclotomicPrime(_) => {
                ring.inv_q_num = vec![BigInt::from(-1); degree];
                ring.inv_q_den = BigInt::one();
            }
            RingKind::General => {
                let q_vec = vec![Rational::zero(), Rational::one()];
                let (num, den) = ring
                    .inv_rational_vec(&q_vec)
                    .expect("q is invertible: modulus has nonzero constant term");
                ring.inv_q_num = num;
                ring.inv_q_den = den;
            }
        }
        Arc::new(ring)
    }

    pub fn modulus(&self) -> &LaurentPoly {
        &self.modulus
    }

    /// Degree of the modulus = number of coefficients in a residue.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The prime this ring was built for via [`QuotientRing::for_prime`].
    pub fn prime(&self) -> Option<u64> {
        self.prime.map(|(p, _)| p)
    }

    pub fn modulus_power(&self) -> Option<u8> {
        self.prime.map(|(_, e)| e)
    }

    pub fn zero(self: &Ring) -> Residue {
        Residue {
            ring: self.clone(),
            num: vec![BigInt::zero(); self.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Ring) -> Residue {
        self.from_int(1)
    }

    pub fn from_int(self: &Ring, n: i64) -> Residue {
        self.from_rational(&crate::rational::rat_int(n))
    }

    pub fn from_rational(self: &Ring, c: &Rational) -> Residue {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = c.numer().clone();
        let mut r = Residue {
            ring: self.clone(),
            num,
            den: c.denom().clone(),
        };
        r.normalize();
        r
    }

    /// q^e as a residue.
    pub fn monomial(self: &Ring, e: i64) -> Residue {
        self.one().mul_qpow(e)
    }

    /// The canonical map Q[q, q^-1] -> Q[q]/(f). Negative exponents are
    /// rewritten via the precomputed q^{-1} residue; the result is the unique
    /// reduced remainder. `reduce` is a ring homomorphism.
    pub fn reduce(self: &Ring, a: &LaurentPoly) -> Residue {
        // clear denominators once
        let mut den = BigInt::one();
        for (_, c) in a.terms() {
            den = den.lcm(c.denom());
        }
        match self.kind {
            RingKind::CyclotomicPrime(p) => {
                // fold exponents with q^p = 1, then eliminate q^{p-1}
                let mut v = vec![BigInt::zero(); p as usize];
                for (e, c) in a.terms() {
                    let j = e.rem_euclid(p as i64) as usize;
                    v[j] += c.numer() * (&den / c.denom());
                }
                self.fold_top(&mut v);
                v.truncate(self.degree);
                let mut r = Residue {
                    ring: self.clone(),
                    num: v,
                    den,
                };
                r.normalize();
                r
            }
            RingKind::General => {
                let shift = a.min_exp().map_or(0, |m| m.min(0)).unsigned_abs();
                let mut v =
                    vec![BigInt::zero(); a.degree().map_or(0, |d| (d + shift as i64) as usize) + 1];
                for (e, c) in a.terms() {
                    v[(e + shift as i64) as usize] += c.numer() * (&den / c.denom());
                }
                self.rem_in_place(&mut v, &mut den);
                v.resize(self.degree, BigInt::zero());
                let mut r = Residue {
                    ring: self.clone(),
                    num: v,
                    den,
                };
                r.normalize();
                if shift > 0 {
                    let inv_q = Residue {
                        ring: self.clone(),
                        num: self.inv_q_num.clone(),
                        den: self.inv_q_den.clone(),
                    };
                    r = r.mul(&inv_q.pow(shift));
                }
                r
            }
        }
    }

    /// With v of length p (exponents 0..p-1), eliminates the q^{p-1} entry
    /// using q^{p-1} = -(1 + q + ... + q^{p-2}).
    fn fold_top(&self, v: &mut [BigInt]) {
        let top = std::mem::take(&mut v[self.degree]);
        if !top.is_zero() {
            for entry in v[..self.degree].iter_mut() {
                *entry -= &top;
            }
        }
    }

    /// Remainder of v modulo the modulus, in place. Pseudo-division: for a
    /// non-monic (scaled) modulus the denominator is multiplied accordingly.
    fn rem_in_place(&self, v: &mut Vec<BigInt>, den: &mut BigInt) {
        let d = self.degree;
        if let RingKind::CyclotomicPrime(p) = self.kind {
            let p = p as usize;
            if v.len() > p {
                for i in (p..v.len()).rev() {
                    let c = std::mem::take(&mut v[i]);
                    v[i - p] += c;
                }
                v.truncate(p);
            }
            if v.len() == p {
                self.fold_top(v);
                v.truncate(d);
            }
            return;
        }
        let lead = &self.m_num[d];
        let monic = lead.is_one();
        for i in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            if !monic {
                for entry in v[..i].iter_mut() {
                    *entry *= lead;
                }
                *den *= lead;
            }
            for (j, m) in self.m_num[..d].iter().enumerate() {
                if !m.is_zero() {
                    v[i - d + j] -= &c * m;
                }
            }
        }
        v.truncate(d);
    }

    /// Extended Euclid on a rational coefficient vector against the modulus.
    /// Returns the inverse as (numerators, denominator) or the nontrivial gcd.
    fn inv_rational_vec(&self, a: &[Rational]) -> Result<(Vec<BigInt>, BigInt)> {
        let f: Vec<Rational> = self
            .m_num
            .iter()
            .map(|n| Rational::new(n.clone(), self.m_den.clone()))
            .collect();
        let a = rpoly::trim(a.to_vec());
        if a.is_empty() {
            return Err(Error::NonInvertible {
                gcd: self.modulus.clone(),
            });
        }
        let (g, s) = rpoly::ext_gcd(&a, &f);
        if g.len() != 1 {
            // monic witness
            let lead = g.last().unwrap().clone();
            let witness = LaurentPoly::from_terms(
                g.into_iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64, c / &lead)),
            );
            return Err(Error::NonInvertible { gcd: witness });
        }
        let g0 = g.into_iter().next().unwrap();
        let inv: Vec<Rational> = s.into_iter().map(|c| c / &g0).collect();
        // common denominator
        let mut den = BigInt::one();
        for c in &inv {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); self.degree];
        for (i, c) in inv.into_iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        Ok((num, den))
    }
}

/// An element of a quotient ring: the unique reduced remainder, as `degree`
/// rational coefficients of q^0 .. q^{degree-1}.
#[derive(Clone)]
pub struct Residue {
    ring: Ring,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.den == other.den && self.num == other.num
    }
}

impl Residue {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    /// Coefficient of q^i as a reduced rational.
    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// The reduced remainder as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.num
                .iter()
                .enumerate()
                .map(|(i, n)| (i as i64, Rational::new(n.clone(), self.den.clone()))),
        )
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: residues belong to different quotient rings"
        );
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|n| n.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for n in self.num.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            self.den /= &g;
            for n in self.num.iter_mut() {
                *n /= &g;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let g = self.den.gcd(&other.den);
        let fa = &other.den / &g;
        let fb = &self.den / &g;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut r = Residue {
            ring: self.ring.clone(),
            num,
            den: &self.den * &fa,
        };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Residue {
            ring: self.ring.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let d = self.ring.degree;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut den = &self.den * &other.den;
        self.ring.rem_in_place(&mut conv, &mut den);
        conv.resize(d, BigInt::zero());
        let mut r = Residue {
            ring: self.ring.clone(),
            num: conv,
            den,
        };
        r.normalize();
        r
    }

    /// Multiplication by the rational scalar `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Residue {
            ring: self.ring.clone(),
            num: self.num.iter().map(|n| n * c.numer()).collect(),
            den: &self.den * c.denom(),
        };
        r.normalize();
        r
    }

    /// Multiplication by q^e (any sign), O(degree) in the [p]-ring.
    pub fn mul_qpow(&self, e: i64) -> Self {
        match self.ring.kind {
            RingKind::CyclotomicPrime(p) => {
                let p = p as usize;
                let mut v = vec![BigInt::zero(); p];
                for (i, n) in self.num.iter().enumerate() {
                    if !n.is_zero() {
                        let j = (i as i64 + e).rem_euclid(p as i64) as usize;
                        v[j] += n;
                    }
                }
                self.ring.fold_top(&mut v);
                v.truncate(self.ring.degree);
                let mut r = Residue {
                    ring: self.ring.clone(),
                    num: v,
                    den: self.den.clone(),
                };
                r.normalize();
                r
            }
            RingKind::General => {
                if e >= 0 {
                    let mut v = vec![BigInt::zero(); e as usize];
                    v.extend(self.num.iter().cloned());
                    let mut den = self.den.clone();
                    self.ring.rem_in_place(&mut v, &mut den);
                    v.resize(self.ring.degree, BigInt::zero());
                    let mut r = Residue {
                        ring: self.ring.clone(),
                        num: v,
                        den,
                    };
                    r.normalize();
                    r
                } else {
                    let inv_q = Residue {
                        ring: self.ring.clone(),
                        num: self.ring.inv_q_num.clone(),
                        den: self.ring.inv_q_den.clone(),
                    };
                    self.mul(&inv_q.pow(e.unsigned_abs()))
                }
            }
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on the
    /// representative and the modulus. A non-coprime element yields
    /// [`Error::NonInvertible`] carrying the (monic) gcd as witness.
    pub fn inv(&self) -> Result<Self> {
        let vec: Vec<Rational> = self.coeffs();
        let (num, den) = self.ring.inv_rational_vec(&vec)?;
        let mut r = Residue {
            ring: self.ring.clone(),
            num,
            den,
        };
        r.normalize();
        Ok(r)
    }
}

impl fmt::Display for Residue {
    /// Canonical text rendering: coefficient list, ascending exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.num.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.coeff(i))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense polynomial helpers over rational coefficient vectors (no trailing
/// zeros; the empty vector is the zero polynomial). Used only by the
/// extended Euclidean inverse.
mod rpoly {
    use crate::rational::Rational;
    use num_traits::Zero;

    pub fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert!(!b.is_empty());
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let mut rem = a.to_vec();
        let mut quot = vec![Rational::zero(); a.len() - b.len() + 1];
        let lead = b.last().unwrap();
        for i in (0..quot.len()).rev() {
            let top = rem[i + b.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let c = top / lead;
            for (j, d) in b.iter().enumerate() {
                if !d.is_zero() {
                    let t = &c * d;
                    rem[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        (trim(quot), trim(rem))
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), Rational::zero());
        }
        for (o, y) in out.iter_mut().zip(b) {
            *o -= y;
        }
        trim(out)
    }

    /// Returns (g, s) with s*a ≡ g (mod f) and g = gcd(a, f).
    pub fn ext_gcd(a: &[Rational], f: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r0 = a.to_vec();
        let mut r1 = f.to_vec();
        let mut s0 = vec![Rational::new(1.into(), 1.into())];
        let mut s1: Vec<Rational> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat_int(c))))
    }

    fn qint(n: u64) -> LaurentPoly {
        LaurentPoly::from_terms((0..n as i64).map(|e| (e, rat_int(1))))
    }

    #[test]
    fn for_prime_builds_cyclotomic_modulus() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        assert_eq!(r3.modulus(), &lp(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(r3.degree(), 2);
        // q^{-1} = q^2 in the [3]-ring
        assert_eq!(r3.monomial(-1), r3.reduce(&lp(&[(2, 1)])));
        assert_eq!(QuotientRing::for_prime(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(QuotientRing::for_prime(2, 1), Err(Error::NotPrime(2)));

        let r3sq = QuotientRing::for_prime(3, 2).unwrap();
        assert_eq!(r3sq.degree(), 4);
        assert_eq!(r3sq.modulus(), &qint(3).mul(&qint(3)));
    }

    #[test]
    fn reduce_examples() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        // q^p = 1
        assert!(r3.reduce(&lp(&[(3, 1)])).eq(&r3.one()));
        // q^{-1} = q^2
        assert_eq!(r3.reduce(&lp(&[(-1, 1)])), r3.reduce(&lp(&[(2, 1)])));
        // the modulus maps to zero
        assert!(r3.reduce(&qint(3)).is_zero());
    }

    #[test]
    fn residue_arithmetic_examples() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        let q = r3.monomial(1);
        let q2 = r3.monomial(2);
        assert!(q.mul(&q2).eq(&r3.one()));
        let x = r3.reduce(&lp(&[(0, 5), (1, -2)]));
        assert!(x.add(&x.neg()).is_zero());

        let r5 = QuotientRing::for_prime(5, 1).unwrap();
        let s = r5.reduce(&lp(&[(0, 1), (1, -1)])).scale(&rat(3, 2));
        assert_eq!(s.coeffs()[..2], [rat(3, 2), rat(-3, 2)]);
    }

    #[test]
    fn inverse_examples() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        // (1+q)(-q) = -q-q^2 = 1 mod [3]
        let inv = r3.reduce(&lp(&[(0, 1), (1, 1)])).inv().unwrap();
        assert_eq!(inv, r3.reduce(&lp(&[(1, -1)])));
        assert_eq!(r3.one().inv().unwrap(), r3.one());
        match r3.zero().inv() {
            Err(Error::NonInvertible { gcd }) => assert_eq!(&gcd, r3.modulus()),
            other => panic!("expected NonInvertible, got {other:?}"),
        }
    }

    #[test]
    fn is_zero_examples() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        assert!(r3.reduce(&lp(&[(0, 1), (1, 1), (2, 1)])).is_zero());
        assert!(!r3.reduce(&lp(&[(1, 1)])).is_zero());
        let r5 = QuotientRing::for_prime(5, 1).unwrap();
        assert!(r5.reduce(&lp(&[(0, 1), (5, -1)])).is_zero());
    }

    #[test]
    fn prime_ring_units() {
        for p in [3u64, 5, 7, 11] {
            let ring = QuotientRing::for_prime(p, 1).unwrap();
            // q^p = 1
            assert!(ring.monomial(p as i64).eq(&ring.one()));
            for k in 1..p {
                // [k] and 1+q^k are invertible
                let qk = ring.reduce(&qint(k));
                assert!(qk.mul(&qk.inv().unwrap()).eq(&ring.one()));
                let opk = ring.reduce(&lp(&[(0, 1), (k as i64, 1)]));
                assert!(opk.mul(&opk.inv().unwrap()).eq(&ring.one()));
            }
            // evaluating the modulus at q=1 gives p
            assert_eq!(ring.modulus().eval(&rat_int(1)).unwrap(), rat_int(p as i64));
        }
    }

    #[test]
    fn prime_squared_ring_units() {
        for p in [3u64, 5, 7] {
            let ring = QuotientRing::for_prime(p, 2).unwrap();
            for k in 1..p {
                let qk = ring.reduce(&qint(k));
                assert!(qk.mul(&qk.inv().unwrap()).eq(&ring.one()));
            }
            // [p] is nonzero but not invertible mod [p]^2
            let qp = ring.reduce(&qint(p));
            assert!(!qp.is_zero());
            match qp.inv() {
                Err(Error::NonInvertible { gcd }) => {
                    assert_eq!(&gcd, QuotientRing::for_prime(p, 1).unwrap().modulus());
                }
                other => panic!("expected NonInvertible, got {other:?}"),
            }
        }
    }

    #[test]
    #[should_panic(expected = "ring mismatch")]
    fn cross_ring_operations_panic() {
        let r3 = QuotientRing::for_prime(3, 1).unwrap();
        let r5 = QuotientRing::for_prime(5, 1).unwrap();
        let _ = r3.one().add(&r5.one());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-8i64..=8), (-9i64..=9), (1i64..=4)), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduce_is_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            for ring in [
                QuotientRing::for_prime(5, 1).unwrap(),
                QuotientRing::for_prime(3, 2).unwrap(),
            ] {
                prop_assert_eq!(ring.reduce(&a.mul(&b)), ring.reduce(&a).mul(&ring.reduce(&b)));
                prop_assert_eq!(ring.reduce(&a.add(&b)), ring.reduce(&a).add(&ring.reduce(&b)));
            }
        }

        #[test]
        fn mul_qpow_matches_reduce_of_shift(a in arb_poly(), e in -12i64..=12) {
            for ring in [
                QuotientRing::for_prime(7, 1).unwrap(),
                QuotientRing::for_prime(3, 2).unwrap(),
            ] {
                prop_assert_eq!(ring.reduce(&a).mul_qpow(e), ring.reduce(&a.shift(e)));
            }
        }

        #[test]
        fn inverse_law(a in arb_poly()) {
            let ring = QuotientRing::for_prime(7, 1).unwrap();
            let x = ring.reduce(&a);
            if let Ok(y) = x.inv() {
                prop_assert!(x.mul(&y).eq(&ring.one()));
            }
        }
    }
}
