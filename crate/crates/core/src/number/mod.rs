//! Arbitrary-precision integer primitives: digit reversal, factorization,
//! the factorization sum `v`, repetition numbers and multiplicative orders.

mod digits;
mod factor;
mod modular;
mod primality;

use num_bigint::BigUint;
use num_traits::Zero;

pub use digits::{
    check_eligible, concat, concat_via_rho, digit_count, is_palindrome, pow10, repetition_base, reverse_digits, rho,
    DigitNumber, ParseDigitsError,
};
pub use factor::{factorize, factorize_u64, Budget, Factorization, TRIAL_DIVISION_BOUND};
pub use modular::{h, h_modulus, h_pair, mult_order, ord_p};
pub use primality::{is_prime, is_prime_u64};

use crate::error::{Error, Result};

/// Factorization sum: primes plus exponents larger than 1, with `v(1) = 1`.
pub fn v(n: &BigUint, budget: Budget) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::Domain("v is defined on natural numbers"));
    }
    Ok(factorize(n, budget)?.factor_sum())
}

/// `10 ∤ n`, `n != r(n)` and `v(n) = v(r(n))`.
pub fn is_v_palindrome(n: &BigUint, budget: Budget) -> Result<bool> {
    if check_eligible(n).is_err() {
        return Ok(false);
    }
    Ok(v(n, budget)? == v(&reverse_digits(n), budget)?)
}
