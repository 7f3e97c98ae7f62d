//! Laurent polynomials in `q` with exact rational coefficients.
//!
//! The universal carrier for every q-object in the crate: q-integers,
//! q-binomials, q-Pochhammer products, q-Fermat quotients and q-Delannoy
//! numbers all live here. Exponents may be negative (the Delannoy weights
//! `q^{C(k,2)-2nk}` require it); coefficients are arbitrary rationals.

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial, stored as a sorted association list from exponent
/// to nonzero coefficient. The representation is canonical: equal
/// polynomials have identical term lists, so equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(rat_int(1), 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(rat_int(n), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in iter {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&e);
            }
        }
        Self {
            terms: map.into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Smallest exponent with a nonzero coefficient; `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, e: i64) -> Rational {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        // merge of two sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Self { terms: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let entry = map.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    /// Formal derivative d/dq; `c*q^e` maps to `c*e*q^(e-1)`.
    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c * rat_int(*e)))
                .collect(),
        }
    }

    /// Exact evaluation at `v`. Fails when the polynomial has negative
    /// exponents and `v = 0`.
    pub fn eval(&self, v: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if v.is_zero() {
                match e.cmp(&0) {
                    std::cmp::Ordering::Less => return Err(Error::ZeroAtNegativeExponent),
                    std::cmp::Ordering::Equal => acc += c,
                    std::cmp::Ordering::Greater => {}
                }
            } else {
                acc += c * pow_rational(v, *e);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division: returns `c` with `self = b * c` when it exists.
    ///
    /// Both operands are shifted to ordinary polynomials, divided by long
    /// division, and the quotient shifted back; Laurent division reduces to
    /// polynomial division times a monomial.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        assert!(!b.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let sa = self.min_exp().unwrap();
        let sb = b.min_exp().unwrap();
        let da = (self.degree().unwrap() - sa) as usize;
        let db = (b.degree().unwrap() - sb) as usize;
        if da < db {
            return Err(Error::NotDivisible);
        }

        if let Some(q) = self.exact_div_integer(b, sa, sb, da, db) {
            return q;
        }

        // dense coefficient vectors with exponent offsets removed
        let mut rem: Vec<Rational> = vec![Rational::zero(); da + 1];
        for (e, c) in &self.terms {
            rem[(e - sa) as usize] = c.clone();
        }
        let mut div: Vec<Rational> = vec![Rational::zero(); db + 1];
        for (e, c) in &b.terms {
            div[(e - sb) as usize] = c.clone();
        }

        let lead = div[db].clone();
        let mut quot: Vec<Rational> = vec![Rational::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = rem[i + db].clone();
            if top.is_zero() {
                continue;
            }
            let c = top / &lead;
            for (j, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    let t = &c * d;
                    rem[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + sa - sb, c)),
        ))
    }

    /// Fast path for the common case of integer coefficients and a divisor
    /// with leading coefficient ±1 (e.g. [p] or 1-q^k): the whole long
    /// division stays in big integers, avoiding per-step rational gcds.
    fn exact_div_integer(
        &self,
        b: &Self,
        sa: i64,
        sb: i64,
        da: usize,
        db: usize,
    ) -> Option<Result<Self>> {
        use num_bigint::BigInt;
        let integral = |p: &Self| p.terms.iter().all(|(_, c)| c.denom().is_one());
        if !integral(self) || !integral(b) {
            return None;
        }
        let lead = b.terms.last().unwrap().1.numer();
        let negate = if lead == &BigInt::from(-1) {
            true
        } else if lead.is_one() {
            false
        } else {
            return None;
        };

        let mut rem: Vec<BigInt> = vec![BigInt::zero(); da + 1];
        for (e, c) in &self.terms {
            rem[(e - sa) as usize] = c.numer().clone();
        }
        let mut div: Vec<BigInt> = vec![BigInt::zero(); db + 1];
        for (e, c) in &b.terms {
            div[(e - sb) as usize] = c.numer().clone();
        }
        let mut quot: Vec<BigInt> = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = std::mem::take(&mut rem[i + db]);
            if top.is_zero() {
                continue;
            }
            let c = if negate { -top } else { top };
            for (j, d) in div[..db].iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Some(Err(Error::NotDivisible));
        }
        Some(Ok(Self::from_terms(quot.into_iter().enumerate().map(
            |(i, c)| (i as i64 + sa - sb, Rational::from_integer(c)),
        ))))
    }
}

/// `v^e` for nonzero `v`, with negative exponents inverting.
fn pow_rational(v: &Rational, e: i64) -> Rational {
    let mut base = if e < 0 { v.recip() } else { v.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Rational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            match (*e, unit_coeff) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(self, rhs)
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}
