//! Exact verification of q-congruences and q-series identities.
//!
//! Everything is computed in exact arithmetic: Laurent polynomials in q with
//! arbitrary-precision rational coefficients, residues in cyclotomic quotient
//! rings Q[q]/([p]) and Q[q]/([p]²), and machine-word modular arithmetic for
//! the classical q = 1 specializations. Congruences are decided by building
//! LHS − RHS as a residue and testing it for zero; identities are verified as
//! exact polynomial equalities after clearing denominators.

pub mod bivar;
pub mod classical;
pub mod congruences;
pub mod error;
pub mod identities;
pub mod laurent;
pub mod primes;
pub mod qkit;
pub mod quotient;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use quotient::{QuotientRing, Residue, Ring};
pub use rational::Rational;
