use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use vpal_core::number::{
    concat, concat_via_rho, digit_count, factorize, h, is_prime_u64, mult_order, reverse_digits, rho, v, Budget,
};

/// Factor sum by trial division, independent of the library factorizer.
fn naive_v(mut n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut sum = 0;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            sum += p + if e >= 2 { e } else { 0 };
        }
        p += 1;
    }
    if n > 1 {
        sum += n;
    }
    sum
}

fn naive_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut t = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        t += 1;
    }
    t
}

proptest! {
    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX) {
        let f = factorize(&BigUint::from(n), Budget::default()).unwrap();
        prop_assert_eq!(f.product(), BigUint::from(n));
        for (p, _) in f.factors() {
            prop_assert!(is_prime_u64(p.to_u64().unwrap()));
        }
    }

    #[test]
    fn factorization_of_products_merges(a in 1u64..1u64 << 40, b in 1u64..1u64 << 40) {
        let budget = Budget::default();
        let fa = factorize(&BigUint::from(a), budget).unwrap();
        let fb = factorize(&BigUint::from(b), budget).unwrap();
        let fab = factorize(&(BigUint::from(a) * BigUint::from(b)), budget).unwrap();
        prop_assert_eq!(fab, fa.merge(&fb));
    }

    #[test]
    fn v_matches_trial_division(n in 1u64..5_000_000) {
        prop_assert_eq!(v(&BigUint::from(n), Budget::default()).unwrap(), BigUint::from(naive_v(n)));
    }

    #[test]
    fn reversal_is_an_involution_off_multiples_of_ten(n in 1u64..u64::MAX) {
        prop_assume!(n % 10 != 0);
        let n = BigUint::from(n);
        prop_assert_eq!(reverse_digits(&reverse_digits(&n)), n.clone());
        prop_assert_eq!(digit_count(&reverse_digits(&n)), digit_count(&n));
    }

    #[test]
    fn concatenation_is_multiplication_by_rho(n in 1u64..10_000_000, k in 1u64..20) {
        let n = BigUint::from(n);
        prop_assert_eq!(concat(&n, k), concat_via_rho(&n, k));
        if !n.is_multiple_of(&BigUint::from(10u32)) {
            prop_assert_eq!(reverse_digits(&concat(&n, k)), concat(&reverse_digits(&n), k));
        }
    }

    #[test]
    fn rho_divides_rho_of_multiples(k in 1u64..30, j in 1u64..5, d in 1usize..5) {
        prop_assert!(rho(k * j, d).is_multiple_of(&rho(k, d)));
    }

    #[test]
    fn multiplicative_order_matches_naive(m in 2u64..5000, a in 1u64..5000) {
        prop_assume!(a.gcd(&m) == 1);
        let t = mult_order(&BigUint::from(a), &BigUint::from(m), Budget::default()).unwrap();
        prop_assert_eq!(t, BigUint::from(naive_order(a, m)));
    }
}

#[test]
fn h_constants_divide_and_exceed_one() {
    let budget = Budget::default();
    for p in (3u64..200).filter(|&p| is_prime_u64(p) && p != 5) {
        for d in 1..=5usize {
            let p_big = BigUint::from(p);
            let h1 = h(&p_big, 1, d, budget).unwrap();
            let h2 = h(&p_big, 2, d, budget).unwrap();
            let h3 = h(&p_big, 3, d, budget).unwrap();
            assert!(h1 > BigUint::from(1u32), "h({p},1,{d})");
            assert!(h2.is_multiple_of(&h1));
            assert!(h3.is_multiple_of(&h2));
            // p^alpha | rho_k exactly when h(p, alpha, d) | k.
            let h1u = h1.to_u64().unwrap();
            let h2u = h2.to_u64().unwrap();
            for k in 1..=60u64 {
                let r = rho(k, d);
                assert_eq!(r.is_multiple_of(&p_big), k % h1u == 0, "p = {p}, d = {d}, k = {k}");
                assert_eq!(r.is_multiple_of(&(&p_big * &p_big)), k % h2u == 0, "p = {p}, d = {d}, k = {k}");
            }
        }
    }
}
