use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::number::{check_eligible, concat, digit_count, factorize, Budget, Factorization};

/// How [`brute_force_flag`] obtains the factorizations of `n(k)` and its
/// reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BruteForceMode {
    /// Build the digit strings, reverse the string, factor both integers.
    Direct,
    /// Factor `n`, `r(n)` and `rho_k` separately and add exponents.
    Accelerated,
    /// Direct, falling back to accelerated when the budget runs out.
    #[default]
    Auto,
}

/// Observed v-palindromicity of `n(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// Some factorization exceeded the budget.
    Unverified,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unverified => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unverified => "UNVERIFIED",
        })
    }
}

fn verdict_of(a: Result<Factorization>, b: impl FnOnce() -> Result<Factorization>) -> Result<Verdict> {
    let pair = a.and_then(|a| Ok((a, b()?)));
    match pair {
        Ok((a, b)) => Ok(Verdict::from_bool(a.factor_sum() == b.factor_sum())),
        Err(Error::BudgetExceeded { .. }) => Ok(Verdict::Unverified),
        Err(e) => Err(e),
    }
}

fn direct(n: &BigUint, k: u64, budget: Budget) -> Result<Verdict> {
    let m = concat(n, k);
    let reversed: String = m.to_str_radix(10).chars().rev().collect();
    let r = BigUint::parse_bytes(reversed.as_bytes(), 10).expect("decimal digits");
    verdict_of(factorize(&m, budget), || factorize(&r, budget))
}

fn mobius(f: &Factorization) -> i32 {
    if f.factors().iter().any(|(_, e)| *e > 1) {
        0
    } else if f.factors().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Phi_m(10)`, from `prod_{e | m} (10^e - 1)^mu(m/e)`.
pub fn cyclotomic_at_ten(m: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let ten = BigUint::from(10u32);
    for e in (1..=m).filter(|e| m % e == 0) {
        let term: BigUint = Pow::pow(&ten, e) - 1u32;
        match mobius(&crate::number::factorize_u64(m / e)) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r == BigUint::default());
    q
}

/// Factorization of `rho_k = (10^(dk) - 1) / (10^d - 1)` as the product of
/// `Phi_m(10)` over `m | dk` with `m ∤ d`.
pub fn factor_rho(k: u64, d: usize, budget: Budget) -> Result<Factorization> {
    let dk = d as u64 * k;
    let mut acc = Factorization::one();
    for m in (1..=dk).filter(|m| dk % m == 0 && d as u64 % m != 0) {
        acc = acc.merge(&factorize(&cyclotomic_at_ten(m), budget)?);
    }
    Ok(acc)
}

fn accelerated(n: &BigUint, k: u64, budget: Budget) -> Result<Verdict> {
    let r = crate::number::reverse_digits(n);
    let d = digit_count(n);
    let rho = match factor_rho(k, d, budget) {
        Ok(f) => f,
        Err(Error::BudgetExceeded { .. }) => return Ok(Verdict::Unverified),
        Err(e) => return Err(e),
    };
    verdict_of(factorize(n, budget).map(|f| f.merge(&rho)), || factorize(&r, budget).map(|f| f.merge(&rho)))
}

/// Whether `n(k)` is a v-palindrome, decided from the factorizations alone.
pub fn brute_force_flag(n: &BigUint, k: u64, mode: BruteForceMode, budget: Budget) -> Result<Verdict> {
    check_eligible(n)?;
    if k == 0 {
        return Err(Error::Domain("repetition count must be positive"));
    }
    match mode {
        BruteForceMode::Direct => direct(n, k, budget),
        BruteForceMode::Accelerated => accelerated(n, k, budget),
        BruteForceMode::Auto => match direct(n, k, budget)? {
            Verdict::Unverified => accelerated(n, k, budget),
            v => Ok(v),
        },
    }
}
