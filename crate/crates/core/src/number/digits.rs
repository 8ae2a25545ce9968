//! Base-10 digit manipulation: reversal, repetition numbers and repeated
//! concatenation.
//!
//! For a `d`-digit number `n`, the repetition number
//!
//! ```text
//!   rho_k = 1 0..0 1 0..0 1 ... 1     (k ones, d-1 zeros between)
//!         = sum_{i<k} 10^(d*i)
//! ```
//!
//! satisfies `n(k) = n * rho_k`, where `n(k)` is the digit string of `n`
//! written `k` times in a row.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{Error, Ineligible, Result};

/// A nonnegative integer together with its canonical decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitNumber {
    value: BigUint,
    digits: String,
}

impl DigitNumber {
    pub fn new(value: BigUint) -> Self {
        let digits = value.to_str_radix(10);
        DigitNumber { value, digits }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }
}

impl From<BigUint> for DigitNumber {
    fn from(value: BigUint) -> Self {
        DigitNumber::new(value)
    }
}

impl From<u64> for DigitNumber {
    fn from(value: u64) -> Self {
        DigitNumber::new(BigUint::from(value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDigitsError(pub String);

impl fmt::Display for ParseDigitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a decimal natural number: {:?}", self.0)
    }
}

impl std::error::Error for ParseDigitsError {}

impl FromStr for DigitNumber {
    type Err = ParseDigitsError;

    /// Accepts a plain decimal string. Leading zeros are rejected unless the
    /// whole string is `"0"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let valid = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
        if !valid {
            return Err(ParseDigitsError(s.to_string()));
        }
        let value = BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| ParseDigitsError(s.to_string()))?;
        Ok(DigitNumber { value, digits: s.to_string() })
    }
}

impl fmt::Display for DigitNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits)
    }
}

pub fn digit_count(n: &BigUint) -> usize {
    if n.is_zero() {
        1
    } else {
        n.to_str_radix(10).len()
    }
}

/// `r(n)`: the integer read from the reversed decimal string of `n`.
/// Trailing zeros of `n` become leading zeros and disappear.
pub fn reverse_digits(n: &BigUint) -> BigUint {
    let reversed: String = n.to_str_radix(10).chars().rev().collect();
    BigUint::parse_bytes(reversed.as_bytes(), 10).expect("reversed decimal digits")
}

pub fn is_palindrome(n: &BigUint) -> bool {
    let s = n.to_str_radix(10);
    s.bytes().eq(s.bytes().rev())
}

/// Checks `n >= 1`, `10 ∤ n` and `n != r(n)`.
pub fn check_eligible(n: &BigUint) -> Result<()> {
    let reason = if n.is_zero() {
        Some(Ineligible::Zero)
    } else if (n % 10u32).is_zero() {
        Some(Ineligible::MultipleOfTen)
    } else if is_palindrome(n) {
        Some(Ineligible::Palindrome)
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::InvalidInput { n: n.clone(), reason }),
        None => Ok(()),
    }
}

pub fn pow10(e: usize) -> BigUint {
    Pow::pow(BigUint::from(10u32), e)
}

/// The repetition number `rho_k` for digit count `d`.
///
/// # Panics
/// If `k` or `d` is zero.
pub fn rho(k: u64, d: usize) -> BigUint {
    assert!(k >= 1 && d >= 1, "rho requires k >= 1 and d >= 1");
    let block = pow10(d);
    let total = pow10(d * k as usize);
    let (q, r) = (total - 1u32).div_rem(&(block - 1u32));
    debug_assert!(r.is_zero());
    q
}

/// `n(k)` built by literally repeating the digit string.
pub fn concat(n: &BigUint, k: u64) -> BigUint {
    assert!(k >= 1, "concat requires k >= 1");
    let s = n.to_str_radix(10).repeat(k as usize);
    BigUint::parse_bytes(s.as_bytes(), 10).expect("repeated decimal digits")
}

/// `n(k)` built as `n * rho_k`.
pub fn concat_via_rho(n: &BigUint, k: u64) -> BigUint {
    n * rho(k, digit_count(n))
}

/// Returns `Some(base)` when the decimal string of `m` is `base` repeated
/// `len(m)/block_len` times.
pub fn repetition_base(m: &BigUint, block_len: usize) -> Option<BigUint> {
    let s = m.to_str_radix(10);
    if block_len == 0 || s.len() % block_len != 0 {
        return None;
    }
    let block = &s[..block_len];
    if s.as_bytes().chunks(block_len).all(|c| c == block.as_bytes()) {
        BigUint::parse_bytes(block.as_bytes(), 10)
    } else {
        None
    }
}
