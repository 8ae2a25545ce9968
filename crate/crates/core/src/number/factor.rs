//! Integer factorization: trial division by the primes below 10^6, then
//! Brent's variant of Pollard rho on whatever composite cofactor remains.
//!
//! Rho work is capped by a [`Budget`]. Running out is reported as
//! [`Error::BudgetExceeded`] and never as a guess at primality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime, is_prime_u64, mul_mod};
use crate::error::{Error, Result};

pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Upper bound on the number of Pollard-rho polynomial evaluations spent on a
/// single `factorize` call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    rho_iterations: u64,
}

impl Budget {
    pub const MIN_ITERATIONS: u64 = 10_000;

    pub fn new(rho_iterations: u64) -> Self {
        Budget { rho_iterations }
    }

    pub fn iterations(&self) -> u64 {
        self.rho_iterations
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(4_000_000)
    }
}

/// Canonical factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds a factorization from arbitrary `(prime, exponent)` pairs,
    /// merging repeated primes and dropping zero exponents. Primality of the
    /// bases is the caller's responsibility.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        Factorization { factors: map.into_iter().collect() }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors.binary_search_by(|(q, _)| q.cmp(p)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    pub fn product(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    /// Factorization of the product of two numbers.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        Factorization::from_pairs(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    /// Factorization sum `v`: each prime, plus each exponent larger than 1.
    /// The empty factorization (the number 1) has `v = 1` by convention.
    pub fn factor_sum(&self) -> BigUint {
        if self.factors.is_empty() {
            return BigUint::one();
        }
        self.factors.iter().fold(BigUint::zero(), |acc, (p, e)| {
            let acc = acc + p;
            if *e >= 2 {
                acc + *e
            } else {
                acc
            }
        })
    }

    /// All divisors with their factorizations, in no particular order.
    pub fn divisors(&self) -> Vec<(BigUint, Factorization)> {
        let mut out = vec![(BigUint::one(), Factorization::one())];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for (d, f) in &out {
                let mut power = d.clone();
                next.push((power.clone(), f.clone()));
                for k in 1..=*e {
                    power *= p;
                    let mut g = f.clone();
                    g.factors.push((p.clone(), k));
                    next.push((power.clone(), g));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn limbs_rem(limbs_be: &[u64], p: u64) -> u64 {
    limbs_be.iter().fold(0u128, |r, &limb| ((r << 64) | limb as u128) % p as u128) as u64
}

/// Strips every prime below the trial bound; returns the cofactor, all of
/// whose prime factors exceed the bound (or which is itself prime).
fn trial_divide(n: &BigUint, out: &mut BTreeMap<BigUint, u32>) -> BigUint {
    let mut rest = n.clone();
    let mut limbs: Vec<u64> = rest.iter_u64_digits().rev().collect();
    for &p in small_primes() {
        let p64 = p as u64;
        if let Some(small) = rest.to_u64() {
            let mut small = small;
            if (p64 as u128) * (p64 as u128) > small as u128 {
                break;
            }
            let mut e = 0;
            while small % p64 == 0 {
                small /= p64;
                e += 1;
            }
            if e > 0 {
                *out.entry(BigUint::from(p)).or_insert(0) += e;
                rest = BigUint::from(small);
            }
            continue;
        }
        if limbs_rem(&limbs, p64) != 0 {
            continue;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        *out.entry(BigUint::from(p)).or_insert(0) += e;
        limbs = rest.iter_u64_digits().rev().collect();
    }
    rest
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// One Brent cycle search with polynomial x^2 + c. `Ok(None)` means this
/// constant failed and another should be tried.
fn brent_u64(n: u64, c: u64, budget: &mut u64) -> std::result::Result<Option<u64>, ()> {
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        if *budget < r {
            return Err(());
        }
        *budget -= r;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = m.min(r - k);
            if *budget < steps {
                return Err(());
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    Ok(if g == n { None } else { Some(g) })
}

fn brent_big(n: &BigUint, c: u64, budget: &mut u64) -> std::result::Result<Option<BigUint>, ()> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let m = 128u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let diff = |a: &BigUint, b: &BigUint| if a >= b { a - b } else { b - a };
    while g.is_one() {
        x = y.clone();
        if *budget < r {
            return Err(());
        }
        *budget -= r;
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            if *budget < steps {
                return Err(());
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Ok(if g == *n { None } else { Some(g) })
}

/// Returns `(root, k)` with `root^k == n` for the largest such `k >= 2`
/// worth checking, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    // Every prime factor here exceeds the trial bound (~2^20).
    let max_k = (n.bits() / 20).max(2) as u32;
    for k in (2..=max_k).rev() {
        let root = n.nth_root(k);
        if num_traits::pow(root.clone(), k as usize) == *n {
            return Some((root, k));
        }
    }
    None
}

/// Splits a composite `n` (no prime factors below the trial bound) into a
/// nontrivial divisor.
fn find_divisor(n: &BigUint, budget: &mut u64) -> Result<BigUint> {
    let exhausted = || Error::BudgetExceeded { cofactor: n.clone() };
    for c in 1u64.. {
        let found = match n.to_u64() {
            Some(small) => brent_u64(small, c, budget).map(|g| g.map(BigUint::from)),
            None => brent_big(n, c, budget),
        };
        match found {
            Ok(Some(d)) => return Ok(d),
            Ok(None) if *budget > 0 => continue,
            _ => return Err(exhausted()),
        }
    }
    unreachable!()
}

/// Complete factorization of `n >= 1`.
pub fn factorize(n: &BigUint, budget: Budget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero"));
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let rest = trial_divide(n, &mut found);
    let mut remaining = budget.iterations();
    let mut stack: Vec<(BigUint, u32)> = vec![(rest, 1)];
    while let Some((m, mult)) = stack.pop() {
        if m.is_one() {
            continue;
        }
        let prime = match m.to_u64() {
            Some(small) => is_prime_u64(small),
            None => is_prime(&m),
        };
        if prime {
            *found.entry(m).or_insert(0) += mult;
            continue;
        }
        if let Some((root, k)) = perfect_power(&m) {
            stack.push((root, mult * k));
            continue;
        }
        let d = find_divisor(&m, &mut remaining)?;
        let other = &m / &d;
        stack.push((d, mult));
        stack.push((other, mult));
    }
    Ok(Factorization { factors: found.into_iter().collect() })
}

/// Factorization of a machine word; the budget is generous enough that this
/// cannot fail for `u64` inputs.
pub fn factorize_u64(n: u64) -> Factorization {
    factorize(&BigUint::from(n), Budget::new(u64::MAX / 4)).expect("u64 factorization")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn known_factorizations() {
        let f = factorize(&b(56056), Budget::default()).unwrap();
        assert_eq!(pairs(&f), vec![(2, 3), (7, 2), (11, 1), (13, 1)]);
        let g = factorize(&b(65065), Budget::default()).unwrap();
        assert_eq!(pairs(&g), vec![(5, 1), (7, 1), (11, 1), (13, 2)]);
        assert!(factorize(&b(1), Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn factor_sums() {
        let v = |n: u64| factorize(&b(n), Budget::default()).unwrap().factor_sum();
        assert_eq!(v(18), b(7));
        assert_eq!(v(81), b(7));
        assert_eq!(v(1), b(1));
        assert_eq!(v(56056), b(38));
        assert_eq!(v(65065), b(38));
    }

    #[test]
    fn large_cofactors_need_rho() {
        // 1000003 * 1000033 (both beyond the trial bound)
        let n = b(1000003) * b(1000033);
        let f = factorize(&n, Budget::default()).unwrap();
        assert_eq!(pairs(&f), vec![(1000003, 1), (1000033, 1)]);
        // A square of a large prime.
        let sq = b(1000003) * b(1000003) * b(999983);
        let f = factorize(&sq, Budget::default()).unwrap();
        assert_eq!(pairs(&f), vec![(999983, 1), (1000003, 2)]);
    }

    #[test]
    fn multi_limb_inputs() {
        // 10^36 - 1 = 3^4 7 11 13 19 37 101 9901 52579 333667 999999000001
        let n = super::super::digits::pow10(36) - 1u32;
        let f = factorize(&n, Budget::default()).unwrap();
        assert_eq!(
            pairs(&f),
            vec![
                (3, 4),
                (7, 1),
                (11, 1),
                (13, 1),
                (19, 1),
                (37, 1),
                (101, 1),
                (9901, 1),
                (52579, 1),
                (333667, 1),
                (999999000001, 1)
            ]
        );
        assert_eq!(f.product(), n);
        // Two 13-digit primes, beyond u64 when multiplied.
        let p = b(1000000000039);
        let q = b(1000000000061);
        let f = factorize(&(&p * &q), Budget::default()).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let p = b(1000000000039);
        let q = b(1000000000061);
        let n = &p * &q;
        match factorize(&n, Budget::new(Budget::MIN_ITERATIONS)) {
            Err(Error::BudgetExceeded { cofactor }) => assert_eq!(cofactor, n),
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn merge_adds_exponents() {
        let a = factorize_u64(12);
        let b_ = factorize_u64(18);
        assert_eq!(pairs(&a.merge(&b_)), vec![(2, 3), (3, 3)]);
        assert_eq!(a.merge(&b_).product(), b(216));
        assert_eq!(a.exponent_of(&b(3)), 1);
        assert_eq!(a.exponent_of(&b(5)), 0);
    }

    #[test]
    fn divisors_of_twelve() {
        let mut ds: Vec<u64> = factorize_u64(12)
            .divisors()
            .iter()
            .map(|(d, f)| {
                assert_eq!(f.product(), *d);
                d.to_u64().unwrap()
            })
            .collect();
        ds.sort();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize_u64(1).divisors().len(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(factorize_u64(56056).to_string(), "2^3 * 7^2 * 11 * 13");
        assert_eq!(factorize_u64(1).to_string(), "1");
    }
}
