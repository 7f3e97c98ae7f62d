//! Polynomials in x whose coefficients are Laurent polynomials in q — the
//! carrier for symbolic identity verification. x is restricted to
//! nonnegative powers; that holds for every identity in scope.

use crate::laurent::LaurentPoly;
use crate::rational::rat_int;
use std::collections::BTreeMap;
use std::fmt;

/// Canonical form: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    coeffs: BTreeMap<u32, LaurentPoly>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    /// The variable x.
    pub fn x() -> Self {
        Self::term(1, LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::term(0, c)
    }

    /// `c * x^r`.
    pub fn term(r: u32, c: LaurentPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(r, c);
        }
        Self { coeffs }
    }

    /// x^k - 1.
    pub fn x_pow_minus_one(k: u32) -> Self {
        Self::term(k, LaurentPoly::one()).sub(&Self::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of x^r.
    pub fn coeff_x(&self, r: u32) -> LaurentPoly {
        self.coeffs
            .get(&r)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (r, c) in &other.coeffs {
            let entry = coeffs.entry(*r).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                coeffs.remove(r);
            }
        }
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(r, c)| (*r, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (ra, ca) in &self.coeffs {
            for (rb, cb) in &other.coeffs {
                let entry = coeffs.entry(ra + rb).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    /// Multiplies every coefficient by the Laurent polynomial `c`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(r, a)| (*r, a.mul(c))).collect(),
        }
    }

    /// Substitutes a Laurent polynomial for x.
    pub fn eval_x(&self, v: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (r, c) in &self.coeffs {
            acc = acc.add(&c.mul(&v.pow(*r)));
        }
        acc
    }
}

/// (x;q)_n = ∏_{j=0}^{n-1} (1 - x q^j).
pub fn pochhammer_x(n: u32) -> BivarPoly {
    let mut acc = BivarPoly::one();
    for j in 0..n as i64 {
        let factor =
            BivarPoly::one().sub(&BivarPoly::term(1, LaurentPoly::monomial(rat_int(1), j)));
        acc = acc.mul(&factor);
    }
    acc
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match r {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{r}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat_int(c))))
    }

    #[test]
    fn mul_examples() {
        let one_plus_x = BivarPoly::one().add(&BivarPoly::x());
        let one_minus_x = BivarPoly::one().sub(&BivarPoly::x());
        let prod = one_plus_x.mul(&one_minus_x);
        assert_eq!(prod.coeff_x(0), lp(&[(0, 1)]));
        assert!(prod.coeff_x(1).is_zero());
        assert_eq!(prod.coeff_x(2), lp(&[(0, -1)]));
        assert!(one_plus_x.mul(&BivarPoly::zero()).is_zero());
    }

    #[test]
    fn pochhammer_x_examples() {
        assert_eq!(pochhammer_x(0), BivarPoly::one());
        assert_eq!(pochhammer_x(1), BivarPoly::one().sub(&BivarPoly::x()));
        // (1-x)(1-xq) = 1 - (1+q)x + q x^2
        let p2 = pochhammer_x(2);
        assert_eq!(p2.coeff_x(0), lp(&[(0, 1)]));
        assert_eq!(p2.coeff_x(1), lp(&[(0, -1), (1, -1)]));
        assert_eq!(p2.coeff_x(2), lp(&[(1, 1)]));
        // leading coefficient of (x;q)_n is (-1)^n q^{n(n-1)/2}
        for n in 1..=6i64 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                pochhammer_x(n as u32).coeff_x(n as u32),
                LaurentPoly::monomial(rat_int(sign), n * (n - 1) / 2)
            );
        }
    }

    #[test]
    fn eval_x_specializations() {
        // (x;q)_2 at x=1 vanishes; at x=0 it is 1
        assert!(pochhammer_x(2).eval_x(&LaurentPoly::one()).is_zero());
        assert!(pochhammer_x(3).eval_x(&LaurentPoly::zero()).is_one());
    }
}
