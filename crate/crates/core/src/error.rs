use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Why an integer cannot be analysed as a base for repeated concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ineligible {
    Zero,
    MultipleOfTen,
    Palindrome,
}

impl fmt::Display for Ineligible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ineligible::Zero => "zero is not a natural number",
            Ineligible::MultipleOfTen => "multiple of 10",
            Ineligible::Palindrome => "palindrome (n equals its reverse)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A cofactor survived the Pollard-rho iteration cap. Never interpret this
    /// as "prime".
    #[error("factorization budget exhausted on cofactor {cofactor}")]
    BudgetExceeded { cofactor: BigUint },

    #[error("{a} is not invertible modulo {modulus}")]
    NotCoprime { a: BigUint, modulus: BigUint },

    #[error("h(p, alpha, d) is undefined for p = {0}")]
    InvalidPrime(BigUint),

    #[error("{n} is not a valid input: {reason}")]
    InvalidInput { n: BigUint, reason: Ineligible },

    #[error("omega = {omega} is not a multiple of the support period {required}")]
    PeriodMismatch { omega: u64, required: u64 },

    #[error("{0}")]
    Domain(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
