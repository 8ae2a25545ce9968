use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::characteristic::Characteristic;
use crate::error::Error;
use crate::indicator::{indicator_of, type_in};
use crate::number::{check_eligible, concat, repetition_base, Budget};

/// Type of `m` relative to one representation, keyed by crucial prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeVerdict {
    Type(BTreeMap<BigUint, BigUint>),
    /// The representation says `m` is not a v-palindrome.
    NotPalindrome,
    /// The base could not be factored within budget.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceEntry {
    pub m: BigUint,
    /// `(base, k)` with `base(k) = m`, from the shortest base to `m` itself.
    pub representations: Vec<(BigUint, u64)>,
    pub types: Vec<TypeVerdict>,
    /// All resolved types agree and none says "not a v-palindrome".
    pub consistent: bool,
}

/// Every way of writing the digit string of `m` as a repeated block, as
/// `(base, k)` pairs ordered by increasing block length.
pub fn representations(m: &BigUint) -> Vec<(BigUint, u64)> {
    let len = m.to_str_radix(10).len();
    (1..=len)
        .filter(|l| len % l == 0)
        .filter_map(|l| repetition_base(m, l).map(|base| (base, (len / l) as u64)))
        .collect()
}

pub fn type_verdict(base: &BigUint, k: u64, budget: Budget) -> TypeVerdict {
    match Characteristic::for_number(base, budget) {
        Ok(ch) => match type_in(&ch, &BigUint::from(k)) {
            Some(s) => {
                TypeVerdict::Type(ch.records.iter().map(|r| r.p.clone()).zip(s.solution.values.clone()).collect())
            }
            None => TypeVerdict::NotPalindrome,
        },
        Err(Error::BudgetExceeded { .. }) => TypeVerdict::Unresolved,
        Err(_) => TypeVerdict::NotPalindrome,
    }
}

pub fn invariance_entry(m: &BigUint, budget: Budget) -> InvarianceEntry {
    let representations = representations(m);
    let types: Vec<TypeVerdict> = representations.iter().map(|(base, k)| type_verdict(base, *k, budget)).collect();
    let resolved: Vec<&TypeVerdict> = types.iter().filter(|t| **t != TypeVerdict::Unresolved).collect();
    let consistent =
        resolved.iter().all(|t| matches!(t, TypeVerdict::Type(_))) && resolved.windows(2).all(|w| w[0] == w[1]);
    InvarianceEntry { m: m.clone(), representations, types, consistent }
}

/// For each eligible primitive base `n <= limit` and `2 <= k <= k_max` with
/// `n(k)` a v-palindrome, compares the types of `m = n(k)` across all of
/// its representations. Empirical evidence only.
pub fn type_invariance_scan(limit: u64, k_max: u64, budget: Budget) -> Vec<InvarianceEntry> {
    let mut out = Vec::new();
    for n in 1..=limit {
        let n = BigUint::from(n);
        if check_eligible(&n).is_err() || representations(&n).len() > 1 {
            continue;
        }
        let Ok(ch) = Characteristic::for_number(&n, budget) else { continue };
        let indicator = indicator_of(&ch);
        for k in 2..=k_max {
            if indicator.evaluate_u64(k) == 1 {
                out.push(invariance_entry(&concat(&n, k), budget));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn representations_of_repeated_strings() {
        assert_eq!(representations(&b(18)), vec![(b(18), 1)]);
        assert_eq!(representations(&b(181818)), vec![(b(18), 3), (b(181818), 1)]);
        let m = concat(&b(13), 15);
        let ks: Vec<u64> = representations(&m).iter().map(|(_, k)| *k).collect();
        assert_eq!(ks, vec![15, 5, 3, 1]);
    }

    #[test]
    fn small_entries_are_consistent() {
        let e = invariance_entry(&b(181818), Budget::default());
        assert!(e.consistent);
        assert_eq!(e.types.len(), 2);
        let e = invariance_entry(&b(18), Budget::default());
        assert!(e.consistent);
    }

    #[test]
    fn thirteen_repeated_fifteen_times() {
        let e = invariance_entry(&concat(&b(13), 15), Budget::default());
        let expected: BTreeMap<BigUint, BigUint> = [(b(13), b(2)), (b(31), b(2))].into_iter().collect();
        for t in &e.types {
            assert!(matches!(t, TypeVerdict::Type(m) if *m == expected) || *t == TypeVerdict::Unresolved);
        }
        assert!(e.consistent);
    }
}
