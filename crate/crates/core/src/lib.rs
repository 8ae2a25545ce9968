//! Which repeated concatenations `n(k)` of a number are v-palindromes.
//!
//! A natural number is a v-palindrome when it is not a multiple of 10, differs
//! from its decimal reverse, and has the same factorization sum `v` (primes
//! plus exponents above 1) as that reverse. For a fixed base `n`, whether
//! `n(k)` is a v-palindrome is a periodic function of `k`; this crate writes
//! that function exactly as an integer combination of divisibility indicators
//!
//! ```text
//!   I^n = sum_j lambda_j * I_{c_j},     I_c(k) = [c | k],
//! ```
//!
//! from which the first repetition count `c(n)` and the fundamental period
//! `omega0(n) = lcm(c_j)` are read off directly.
//!
//! Modules:
//! - [`number`]: digits, factorization, `v`, multiplicative orders.
//! - [`characteristic`]: crucial primes, the step functions `phi`, the case
//!   classifier and the constraint sets attached to each characteristic
//!   solution.
//! - [`indicator`]: the canonical indicator combination and the analysis
//!   report.
//! - [`spectrum`]: periodic arithmetical functions as finite root-of-unity
//!   spectra.
//! - [`oracle`]: brute-force ground truth and counterexample searches.

pub mod characteristic;
pub mod error;
pub mod indicator;
pub mod number;
pub mod oracle;
pub mod spectrum;

pub use error::{Error, Ineligible, Result};
pub use number::{Budget, DigitNumber, Factorization};
