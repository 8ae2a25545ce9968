use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::characteristic::{lcm_of, SolutionConstraints};

/// `sum_j lambda_j * I_{c_j}` with `c_1 < c_2 < ...` and every `lambda_j != 0`.
///
/// Every constructor collects like terms, so two combinations describing the
/// same function compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndicatorCombination {
    terms: Vec<(BigUint, i64)>,
}

/// `c(n)`: the least `k` with `n(k)` a v-palindrome, if any.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(c) => write!(f, "{c}"),
            Order::Infinite => f.write_str("infinity"),
        }
    }
}

impl IndicatorCombination {
    pub fn zero() -> Self {
        IndicatorCombination::default()
    }

    /// `I_c`.
    pub fn single(c: BigUint) -> Self {
        Self::from_terms([(c, 1)])
    }

    /// Collects like terms and drops zero coefficients. `c = 0` is rejected.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, i64)>,
    {
        let mut map: BTreeMap<BigUint, i64> = BTreeMap::new();
        for (c, lambda) in terms {
            assert!(!c.is_zero(), "indicator modulus must be positive");
            *map.entry(c).or_insert(0) += lambda;
        }
        IndicatorCombination { terms: map.into_iter().filter(|(_, l)| *l != 0).collect() }
    }

    pub fn terms(&self) -> &[(BigUint, i64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn moduli(&self) -> impl Iterator<Item = &BigUint> {
        self.terms.iter().map(|(c, _)| c)
    }

    pub fn add(&self, other: &IndicatorCombination) -> IndicatorCombination {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// Pointwise product, using `I_a I_b = I_lcm(a,b)`.
    pub fn mul(&self, other: &IndicatorCombination) -> IndicatorCombination {
        Self::from_terms(
            self.terms.iter().flat_map(|(a, la)| other.terms.iter().map(move |(b, lb)| (a.lcm(b), la * lb))),
        )
    }

    /// `sum_j lambda_j [c_j | x]`.
    pub fn evaluate(&self, x: &BigInt) -> i64 {
        let x = x.magnitude();
        self.terms.iter().filter(|(c, _)| x.is_multiple_of(c)).map(|(_, l)| l).sum()
    }

    /// [`evaluate`](Self::evaluate) for machine-word arguments.
    pub fn evaluate_u64(&self, x: u64) -> i64 {
        self.terms
            .iter()
            .filter(|(c, _)| match c.to_u64() {
                Some(c) => x % c == 0,
                None => x == 0,
            })
            .map(|(_, l)| l)
            .sum()
    }

    /// `omega0 = lcm(c_j)`, and 1 for the empty combination.
    pub fn fundamental_period(&self) -> BigUint {
        lcm_of(self.moduli())
    }

    pub fn order(&self) -> Order {
        match self.terms.first() {
            Some((c, _)) => Order::Finite(c.clone()),
            None => Order::Infinite,
        }
    }
}

/// `I_{S(A,B)} = I_lcm(A) * prod_{b in B} (1 - I_b)`, expanded over subsets of
/// `B`. A degenerate pair cancels to the empty combination.
pub fn expand_solution(constraints: &SolutionConstraints) -> IndicatorCombination {
    let base = constraints.lcm_a();
    let b: Vec<&BigUint> = constraints.b.iter().collect();
    let mut partial: BTreeMap<BigUint, i64> = BTreeMap::new();
    partial.insert(base, 1);
    for m in b {
        let mut next = partial.clone();
        for (c, l) in &partial {
            *next.entry(c.lcm(m)).or_insert(0) -= l;
        }
        partial = next;
    }
    IndicatorCombination::from_terms(partial)
}

impl fmt::Display for IndicatorCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, l)) in self.terms.iter().enumerate() {
            let mag = l.unsigned_abs();
            match (i, *l < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "I_{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseCombinationError(pub String);

impl fmt::Display for ParseCombinationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed indicator combination: {}", self.0)
    }
}

impl std::error::Error for ParseCombinationError {}

impl FromStr for IndicatorCombination {
    type Err = ParseCombinationError;

    /// Parses the [`Display`](fmt::Display) notation, e.g.
    /// `"I_15 - I_195 - I_465 + 2I_6045"`. Whitespace is ignored and a `*`
    /// between the multiplier and `I` is allowed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCombinationError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact == "0" {
            return Ok(IndicatorCombination::zero());
        }
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                i += 1;
            } else if i > 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mult: i64 = if start == i { 1 } else { compact[start..i].parse().map_err(|_| err())? };
            if !compact[i..].starts_with("I_") {
                return Err(err());
            }
            i += 2;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let c = BigUint::parse_bytes(&compact.as_bytes()[start..i], 10).ok_or_else(err)?;
            if c.is_zero() || mult == 0 {
                return Err(err());
            }
            terms.push((c, sign * mult));
        }
        Ok(IndicatorCombination::from_terms(terms))
    }
}
