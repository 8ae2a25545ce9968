//! Primality testing.
//!
//! Machine-word inputs use Miller-Rabin with the first twelve prime bases,
//! which is exact below 3.3e24 and therefore for every `u64`. Larger inputs get
//! the same Miller-Rabin bases plus a strong Lucas test with Selfridge
//! parameters (Baillie-PSW); there is no known composite passing both.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigUint, bases: &[u64]) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in bases {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("nonnegative residue");
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz % 2 == 1 {
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        a >>= tz;
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    (x >> 1usize).mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge's method A parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d_param: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d_param), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d_param.unsigned_abs()) != *n {
            return false;
        }
        d_param = if d_param > 0 { -(d_param + 2) } else { -d_param + 2 };
    }
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let p = BigInt::one();
    let q = BigInt::from((1 - d_param) / 4);
    let d_big = BigInt::from(d_param);

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let d = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&n_int);
    let bits = d.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - &qk - &qk).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if d.bit(i) {
            let new_u = half_mod(&p * &u + &v, &n_int);
            let new_v = half_mod(&d_big * &u + &p * &v, &n_int);
            u = new_u;
            v = new_v;
            qk = (&qk * &q).mod_floor(&n_int);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
    }
    false
}

pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !miller_rabin_big(n, &MR_BASES) {
        return false;
    }
    // 3.3e24: above this the fixed bases are no longer a proof on their own.
    let proven_bound = BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if *n < proven_bound {
        return true;
    }
    strong_lucas(n)
}
