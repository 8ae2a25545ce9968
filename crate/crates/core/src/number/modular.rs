//! p-adic valuations, multiplicative orders and the constants
//! `h(p, alpha, d)`: the order of `10^d` modulo `p^(alpha + ord_p(10^d - 1))`.
//!
//! For `p` not dividing 10, `p^alpha | rho_k` exactly when `h(p, alpha, d) | k`,
//! which is what turns exponent conditions on `n(k)` into divisibility
//! conditions on `k`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::digits::pow10;
use super::factor::{factorize, Budget, Factorization};
use super::primality::pow_mod;
use crate::error::{Error, Result};

/// Largest `e` with `p^e | a`. Returns 0 for `a = 0` or `p < 2`.
pub fn ord_p(a: &BigUint, p: &BigUint) -> u32 {
    if a.is_zero() || *p < BigUint::from(2u32) {
        return 0;
    }
    let mut a = a.clone();
    let mut e = 0;
    loop {
        let (q, r) = a.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        a = q;
        e += 1;
    }
}

fn is_unit_power(a: &BigUint, exp: &BigUint, m: &BigUint) -> bool {
    match (a.to_u64(), exp.to_u64(), m.to_u64()) {
        (Some(a), Some(e), Some(m)) => pow_mod(a, e, m) == 1 % m,
        _ => a.modpow(exp, m) == BigUint::one() % m,
    }
}

/// Order of `a` given a multiple of it (`group_order`) in factored form:
/// strip each prime from the exponent while the power stays 1.
fn order_by_descent(a: &BigUint, m: &BigUint, group_order: &Factorization) -> BigUint {
    let mut t = group_order.product();
    for (q, e) in group_order.factors() {
        for _ in 0..*e {
            let candidate = &t / q;
            if is_unit_power(a, &candidate, m) {
                t = candidate;
            } else {
                break;
            }
        }
    }
    debug_assert!(is_unit_power(a, &t, m));
    t
}

/// Euler's totient of a factored modulus, itself factored.
fn totient_factored(m: &Factorization, budget: Budget) -> Result<Factorization> {
    let mut acc = Factorization::one();
    for (p, e) in m.factors() {
        let pm1 = factorize(&(p - 1u32), budget)?;
        acc = acc.merge(&pm1);
        if *e > 1 {
            acc = acc.merge(&Factorization::from_pairs([(p.clone(), e - 1)]));
        }
    }
    Ok(acc)
}

/// Least `t >= 1` with `a^t = 1 (mod m)`.
pub fn mult_order(a: &BigUint, m: &BigUint, budget: Budget) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::Domain("modulus must be positive"));
    }
    if m.is_one() {
        return Ok(BigUint::one());
    }
    let a = a % m;
    if !a.gcd(m).is_one() {
        return Err(Error::NotCoprime { a, modulus: m.clone() });
    }
    let phi = totient_factored(&factorize(m, budget)?, budget)?;
    Ok(order_by_descent(&a, m, &phi))
}

/// `p^(alpha + ord_p(10^d - 1))`.
pub fn h_modulus(p: &BigUint, alpha: u32, d: usize) -> BigUint {
    let base = ord_p(&(pow10(d) - 1u32), p);
    num_traits::pow(p.clone(), (alpha + base) as usize)
}

fn check_h_prime(p: &BigUint) -> Result<()> {
    if *p == BigUint::from(2u32) || *p == BigUint::from(5u32) {
        Err(Error::InvalidPrime(p.clone()))
    } else {
        Ok(())
    }
}

/// `h(p, alpha, d)`, the order of `10^d` modulo `p^(alpha + ord_p(10^d - 1))`.
/// `p` must be an odd prime other than 5 and `alpha >= 1`.
pub fn h(p: &BigUint, alpha: u32, d: usize, budget: Budget) -> Result<BigUint> {
    check_h_prime(p)?;
    if alpha == 0 {
        return Err(Error::Domain("h requires alpha >= 1"));
    }
    let pm1 = factorize(&(p - 1u32), budget)?;
    Ok(h_with(p, alpha, d, &pm1))
}

fn h_with(p: &BigUint, alpha: u32, d: usize, p_minus_1: &Factorization) -> BigUint {
    let m = h_modulus(p, alpha, d);
    let e = ord_p(&m, p);
    let group = p_minus_1.merge(&Factorization::from_pairs([(p.clone(), e - 1)]));
    let a = pow10(d) % &m;
    order_by_descent(&a, &m, &group)
}

/// `(h(p, 1, d), h(p, 2, d))`, sharing the factorization of `p - 1`.
pub fn h_pair(p: &BigUint, d: usize, budget: Budget) -> Result<(BigUint, BigUint)> {
    check_h_prime(p)?;
    let pm1 = factorize(&(p - 1u32), budget)?;
    Ok((h_with(p, 1, d, &pm1), h_with(p, 2, d, &pm1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Order by repeated multiplication; only for tiny moduli.
    fn naive_order(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut t = 1;
        while x != 1 % m {
            x = x * a % m;
            t += 1;
        }
        t
    }

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&b(999), &b(3)), 3);
        assert_eq!(ord_p(&b(7), &b(5)), 0);
        assert_eq!(ord_p(&b(56056), &b(2)), 3);
    }

    #[test]
    fn order_examples() {
        let budget = Budget::default();
        assert_eq!(mult_order(&b(6), &b(7), budget).unwrap(), b(2));
        assert_eq!(mult_order(&b(1), &b(97), budget).unwrap(), b(1));
        assert_eq!(mult_order(&b(10), &b(81), budget).unwrap(), b(9));
        assert!(matches!(mult_order(&b(6), &b(9), budget), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_matches_naive_for_small_moduli() {
        for m in 2..300u64 {
            for a in 1..m {
                if a.gcd(&m) != 1 {
                    continue;
                }
                assert_eq!(
                    mult_order(&b(a), &b(m), Budget::default()).unwrap(),
                    b(naive_order(a, m)),
                    "a = {a}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn h_examples() {
        let budget = Budget::default();
        assert_eq!(h(&b(7), 2, 3, budget).unwrap(), b(14));
        assert_eq!(h(&b(7), 1, 3, budget).unwrap(), b(2));
        assert_eq!(h(&b(23), 1, 3, budget).unwrap(), b(22));
        assert_eq!(h(&b(23), 2, 3, budget).unwrap(), b(506));
        assert_eq!(h(&b(3), 2, 3, budget).unwrap(), b(9));
        assert!(matches!(h(&b(2), 1, 3, budget), Err(Error::InvalidPrime(_))));
        assert!(matches!(h(&b(5), 2, 1, budget), Err(Error::InvalidPrime(_))));
        assert_eq!(h_pair(&b(23), 3, budget).unwrap(), (b(22), b(506)));
    }

    #[test]
    fn h_matches_naive_order() {
        for p in [3u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            for d in 1..=3usize {
                for alpha in 1..=2 {
                    let m = h_modulus(&b(p), alpha, d).to_u64().unwrap();
                    let a = 10u64.pow(d as u32) % m;
                    assert_eq!(
                        h(&b(p), alpha, d, Budget::default()).unwrap(),
                        b(naive_order(a, m)),
                        "p = {p}, alpha = {alpha}, d = {d}"
                    );
                }
            }
        }
    }
}
