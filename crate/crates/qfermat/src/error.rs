//! Error type shared across the crate.

use crate::laurent::LaurentPoly;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Exact division was requested but the divisor does not divide the
    /// dividend. For congruence builders this signals a falsified
    /// divisibility claim rather than a programming error.
    #[error("exact division left a nonzero remainder")]
    NotDivisible,

    /// A Laurent polynomial with negative exponents was evaluated at zero.
    #[error("cannot evaluate negative exponents at q = 0")]
    ZeroAtNegativeExponent,

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    /// The element shares a nontrivial factor with the ring modulus. The
    /// gcd is carried as a witness so a failed run can distinguish
    /// "statement false" from "denominator not coprime to the modulus".
    #[error("element is not invertible; gcd with modulus is {gcd}")]
    NonInvertible { gcd: LaurentPoly },

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
