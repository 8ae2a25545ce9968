//! Exact spectra of indicator combinations.
//!
//! All primitive `d`-th roots of unity receive the same coefficient in the
//! spectrum of `sum_j lambda_j I_{c_j}`, namely `sum_{d | c_j} lambda_j / c_j`.
//! Summing the primitive roots gives the Ramanujan sum `c_d(x)`, so
//!
//! ```text
//!   f(x) = sum_d coef(d) * c_d(x),
//! ```
//!
//! which is evaluated here in exact rational arithmetic. The fundamental
//! period is the lcm of the `d` with nonzero coefficient.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;
use crate::indicator::IndicatorCombination;
use crate::number::{factorize, ord_p, Budget, Factorization};

fn int(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

/// `c_d(x) = sum over primitive d-th roots zeta of zeta^x`, from the
/// factorization of `d`. Multiplicative in `d`, with
/// `c_{p^a}(x)` equal to `p^a - p^(a-1)`, `-p^(a-1)` or 0 according as
/// `p^a | x`, `p^(a-1) || x`, or neither.
pub fn ramanujan_sum(d: &Factorization, x: &BigUint) -> BigInt {
    let mut acc = BigInt::one();
    for (p, a) in d.factors() {
        let v = if x.is_zero() { u32::MAX } else { ord_p(x, p) };
        let lower = int(&num_traits::pow(p.clone(), (*a - 1) as usize));
        let factor = if v >= *a {
            &lower * int(p) - &lower
        } else if v + 1 == *a {
            -lower
        } else {
            return BigInt::zero();
        };
        acc *= factor;
    }
    acc
}

/// Net coefficient per root order, zero orders omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorSpectrum {
    coefficients: BTreeMap<BigUint, (BigRational, Factorization)>,
}

impl DivisorSpectrum {
    pub fn from_combination(comb: &IndicatorCombination, budget: Budget) -> Result<Self> {
        let mut acc: BTreeMap<BigUint, (BigRational, Factorization)> = BTreeMap::new();
        for (c, lambda) in comb.terms() {
            let weight = BigRational::new(BigInt::from(*lambda), int(c));
            for (d, f) in factorize(c, budget)?.divisors() {
                let slot = acc.entry(d).or_insert_with(|| (BigRational::zero(), f));
                slot.0 += &weight;
            }
        }
        acc.retain(|_, (coef, _)| !coef.is_zero());
        Ok(DivisorSpectrum { coefficients: acc })
    }

    /// [`from_combination`](Self::from_combination) with the default budget.
    pub fn from_small_combination(comb: &IndicatorCombination) -> Result<Self> {
        Self::from_combination(comb, Budget::default())
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Root orders with a nonzero component, increasing.
    pub fn orders(&self) -> impl Iterator<Item = &BigUint> {
        self.coefficients.keys()
    }

    pub fn coefficient(&self, d: &BigUint) -> BigRational {
        self.coefficients.get(d).map(|(c, _)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// `lcm` of the orders with nonzero component.
    pub fn support_period(&self) -> BigUint {
        self.orders().fold(BigUint::one(), |acc, d| acc.lcm(d))
    }

    pub fn evaluate(&self, x: &BigUint) -> BigRational {
        self.coefficients.values().map(|(coef, f)| coef * BigRational::from_integer(ramanujan_sum(f, x))).sum()
    }

    /// [`evaluate`](Self::evaluate) rounded to an integer, or `None` when the
    /// value is not integral.
    pub fn evaluate_integer(&self, x: &BigUint) -> Option<BigInt> {
        let v = self.evaluate(x);
        v.is_integer().then(|| v.to_integer())
    }

    pub(crate) fn coefficients_u64(&self) -> Vec<(u64, f64)> {
        self.coefficients
            .iter()
            .map(|(d, (c, _))| {
                let value = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
                (d.to_u64().expect("root order fits in u64"), value)
            })
            .collect()
    }
}
