//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals; the
//! canonical form (positive denominator, reduced, zero as 0/1) is maintained
//! by `BigRational` itself.

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn canonical_form() {
        let r = rat(-4, -6);
        assert_eq!(r, rat(2, 3));
        assert!(r.denom().is_positive());
        let z = rat(0, 5);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
    }
}
