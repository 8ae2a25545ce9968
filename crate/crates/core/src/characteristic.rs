//! From crucial primes to the constraint sets `S(A_u, B_u)`.
//!
//! Write `n = prod p^a_p` and `r(n) = prod p^b_p`. A prime is *crucial* when
//! `a_p != b_p`; put `delta_p = a_p - b_p` and `mu_p = min(a_p, b_p)`. Since
//! `n(k) = n * rho_k` and `r(n(k)) = r(n) * rho_k`, only crucial primes
//! contribute to `v(n(k)) - v(r(n(k)))`, and the contribution of `p` is
//! `sgn(delta_p) * phi_{p,|delta_p|}(mu_p + ord_p(rho_k))` where
//!
//! ```text
//!   delta >= 2:        phi(0) = p + delta, phi(1) = 1 + delta, phi(>=2) = delta
//!   delta = 1, p != 2: phi(0) = p,         phi(1) = 2,         phi(>=2) = 1
//!   (p, delta) = (2,1): phi(0) = phi(1) = 2,                   phi(>=2) = 1
//! ```
//!
//! A *characteristic solution* picks `u_p` in the range of each `phi` with
//! `sum sgn(delta_p) u_p = 0`. Each solution turns into a pair of finite sets
//! `(A_u, B_u)` of moduli such that `n(k)` realises `u` exactly when every
//! element of `A_u` divides `k` and no element of `B_u` does.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{check_eligible, digit_count, factorize, h_pair, reverse_digits, Budget, Factorization};

/// Exponent bookkeeping for one crucial prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrucialPrime {
    pub p: BigUint,
    /// Exponent of `p` in `n`.
    pub a: u32,
    /// Exponent of `p` in `r(n)`.
    pub b: u32,
}

impl CrucialPrime {
    pub fn new(p: BigUint, a: u32, b: u32) -> Self {
        assert_ne!(a, b, "a crucial prime needs differing exponents");
        CrucialPrime { p, a, b }
    }

    pub fn delta(&self) -> i64 {
        self.a as i64 - self.b as i64
    }

    pub fn abs_delta(&self) -> u32 {
        self.a.abs_diff(self.b)
    }

    pub fn mu(&self) -> u32 {
        self.a.min(self.b)
    }

    pub fn sign(&self) -> i32 {
        if self.a > self.b {
            1
        } else {
            -1
        }
    }

    /// `p` is 2 or 5, so `p ∤ rho_k` for every `k`.
    pub fn divides_ten(&self) -> bool {
        self.p == BigUint::from(2u32) || self.p == BigUint::from(5u32)
    }
}

/// Crucial primes from the two factorizations, sorted by prime.
pub fn crucial_primes_from(n: &Factorization, rev: &Factorization) -> Vec<CrucialPrime> {
    let primes: BTreeSet<&BigUint> = n.primes().chain(rev.primes()).collect();
    primes
        .into_iter()
        .filter_map(|p| {
            let (a, b) = (n.exponent_of(p), rev.exponent_of(p));
            (a != b).then(|| CrucialPrime::new(p.clone(), a, b))
        })
        .collect()
}

pub fn crucial_primes(n: &BigUint, budget: Budget) -> Result<Vec<CrucialPrime>> {
    check_eligible(n)?;
    let fn_ = factorize(n, budget)?;
    let fr = factorize(&reverse_digits(n), budget)?;
    Ok(crucial_primes_from(&fn_, &fr))
}

fn is_two(p: &BigUint) -> bool {
    *p == BigUint::from(2u32)
}

/// The step function `phi_{p,delta}(alpha)`, `delta >= 1`.
pub fn phi(p: &BigUint, delta: u32, alpha: u32) -> BigUint {
    assert!(delta >= 1, "phi requires delta >= 1");
    match (delta, alpha) {
        (1, 0 | 1) if is_two(p) => BigUint::from(2u32),
        (1, _) if is_two(p) => BigUint::one(),
        (1, 0) => p.clone(),
        (1, 1) => BigUint::from(2u32),
        (1, _) => BigUint::one(),
        (_, 0) => p + delta,
        (_, 1) => BigUint::from(1 + delta),
        _ => BigUint::from(delta),
    }
}

/// `R_{p,delta}`, ascending. Two elements exactly for `(2, 1)`.
pub fn phi_range(p: &BigUint, delta: u32) -> Vec<BigUint> {
    let set: BTreeSet<BigUint> = (0..=2).map(|alpha| phi(p, delta, alpha)).collect();
    set.into_iter().collect()
}

/// The four shapes a preimage `phi^{-1}(u)` can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preimage {
    Zero,
    One,
    ZeroOrOne,
    AtLeastTwo,
}

impl Preimage {
    pub fn contains(self, alpha: u32) -> bool {
        match self {
            Preimage::Zero => alpha == 0,
            Preimage::One => alpha == 1,
            Preimage::ZeroOrOne => alpha <= 1,
            Preimage::AtLeastTwo => alpha >= 2,
        }
    }
}

/// `phi_{p,delta}^{-1}(u)`, or `None` when `u` is outside the range.
pub fn preimage(p: &BigUint, delta: u32, u: &BigUint) -> Option<Preimage> {
    let hits: Vec<bool> = (0..=2).map(|alpha| phi(p, delta, alpha) == *u).collect();
    match (hits[0], hits[1], hits[2]) {
        (true, true, false) => Some(Preimage::ZeroOrOne),
        (true, false, false) => Some(Preimage::Zero),
        (false, true, false) => Some(Preimage::One),
        (false, false, true) => Some(Preimage::AtLeastTwo),
        _ => None,
    }
}

/// Case number of a quadruple `(p, delta, u, mu)`, printed `[i]` .. `[vii]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 7] =
        [CaseLabel::I, CaseLabel::II, CaseLabel::III, CaseLabel::IV, CaseLabel::V, CaseLabel::VI, CaseLabel::VII];

    pub fn roman(self) -> &'static str {
        match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
            CaseLabel::IV => "iv",
            CaseLabel::V => "v",
            CaseLabel::VI => "vi",
            CaseLabel::VII => "vii",
        }
    }

    pub fn from_roman(s: &str) -> Option<CaseLabel> {
        CaseLabel::ALL.into_iter().find(|c| c.roman() == s)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.roman())
    }
}

pub fn classify_preimage(pre: Preimage, mu: u32) -> CaseLabel {
    match (pre, mu) {
        (Preimage::Zero, 0) => CaseLabel::I,
        (Preimage::One | Preimage::ZeroOrOne, 1) => CaseLabel::I,
        (Preimage::One, 0) => CaseLabel::II,
        (Preimage::ZeroOrOne, 0) => CaseLabel::III,
        (Preimage::AtLeastTwo, 1) => CaseLabel::IV,
        (Preimage::AtLeastTwo, 0) => CaseLabel::V,
        (Preimage::AtLeastTwo, _) => CaseLabel::VI,
        _ => CaseLabel::VII,
    }
}

/// `D(p, delta, u, mu)`. Fails when `u` is not in `R_{p,delta}`.
pub fn classify(p: &BigUint, delta: u32, u: &BigUint, mu: u32) -> Result<CaseLabel> {
    let pre = preimage(p, delta, u).ok_or(Error::Domain("u is not in the range of phi"))?;
    Ok(classify_preimage(pre, mu))
}

/// A tuple `(u_p)` indexed by the crucial primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharSolution {
    pub values: Vec<BigUint>,
}

impl CharSolution {
    pub fn new(values: Vec<BigUint>) -> Self {
        CharSolution { values }
    }

    pub fn is_valid_for(&self, records: &[CrucialPrime]) -> bool {
        self.values.len() == records.len()
            && records.iter().zip(&self.values).all(|(r, u)| phi_range(&r.p, r.abs_delta()).contains(u))
            && signed_sum(records, &self.values).is_zero()
    }
}

impl fmt::Display for CharSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, u) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str(")")
    }
}

fn signed(sign: i32, x: &BigUint) -> BigInt {
    let x = BigInt::from_biguint(Sign::Plus, x.clone());
    if sign < 0 {
        -x
    } else {
        x
    }
}

fn signed_sum(records: &[CrucialPrime], values: &[BigUint]) -> BigInt {
    records.iter().zip(values).map(|(r, u)| signed(r.sign(), u)).sum()
}

/// All characteristic solutions, in lexicographic order of the tuple.
///
/// Depth-first over the ranges; a branch is cut as soon as the interval of
/// sums still reachable from the remaining primes excludes zero.
pub fn solve_characteristic(records: &[CrucialPrime]) -> Vec<CharSolution> {
    let ranges: Vec<Vec<BigUint>> = records.iter().map(|r| phi_range(&r.p, r.abs_delta())).collect();
    // reach[i] = (min, max) of sum over levels i.. of the signed terms.
    let mut reach = vec![(BigInt::zero(), BigInt::zero()); records.len() + 1];
    for i in (0..records.len()).rev() {
        let lo = signed(records[i].sign(), ranges[i].first().unwrap());
        let hi = signed(records[i].sign(), ranges[i].last().unwrap());
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        reach[i] = (&reach[i + 1].0 + lo, &reach[i + 1].1 + hi);
    }

    fn descend(
        level: usize,
        partial: &BigInt,
        records: &[CrucialPrime],
        ranges: &[Vec<BigUint>],
        reach: &[(BigInt, BigInt)],
        current: &mut Vec<BigUint>,
        out: &mut Vec<CharSolution>,
    ) {
        if level == records.len() {
            if partial.is_zero() {
                out.push(CharSolution::new(current.clone()));
            }
            return;
        }
        let (lo, hi) = &reach[level];
        if (partial + lo).is_positive() || (partial + hi).is_negative() {
            return;
        }
        for u in &ranges[level] {
            current.push(u.clone());
            let next = partial + signed(records[level].sign(), u);
            descend(level + 1, &next, records, ranges, reach, current, out);
            current.pop();
        }
    }

    let mut out = Vec::new();
    if records.is_empty() {
        return out;
    }
    descend(0, &BigInt::zero(), records, &ranges, &reach, &mut Vec::new(), &mut out);
    out
}

/// `T_{p,u} = (A_{p,u}, B_{p,u})`; each side holds at most one modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstraintPair {
    pub a: Option<BigUint>,
    pub b: Option<BigUint>,
}

impl ConstraintPair {
    fn new(a: Option<BigUint>, b: Option<BigUint>) -> Self {
        ConstraintPair { a, b }
    }

    fn never() -> Self {
        ConstraintPair::new(None, Some(BigUint::one()))
    }

    fn always() -> Self {
        ConstraintPair::default()
    }
}

impl fmt::Display for ConstraintPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Option<BigUint>| match s {
            Some(x) => format!("{{{x}}}"),
            None => "{}".to_string(),
        };
        write!(f, "({},{})", side(&self.a), side(&self.b))
    }
}

/// `(h(p,1,d), h(p,2,d))` for a crucial prime outside {2, 5}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HConstants {
    pub h1: BigUint,
    pub h2: BigUint,
}

impl HConstants {
    pub fn compute(p: &BigUint, d: usize, budget: Budget) -> Result<Self> {
        let (h1, h2) = h_pair(p, d, budget)?;
        Ok(HConstants { h1, h2 })
    }
}

/// The pair for a given case. `h` must be present when `p` is not 2 or 5.
pub fn constraint_pair_for_case(case: CaseLabel, record: &CrucialPrime, h: Option<&HConstants>) -> ConstraintPair {
    match case {
        CaseLabel::VI => return ConstraintPair::always(),
        CaseLabel::VII => return ConstraintPair::never(),
        _ => {}
    }
    if record.divides_ten() {
        // ord_p(rho_k) = 0 for p in {2, 5}.
        return match case {
            CaseLabel::I | CaseLabel::III => ConstraintPair::always(),
            _ => ConstraintPair::never(),
        };
    }
    let h = h.expect("h constants for a prime outside {2, 5}");
    match case {
        CaseLabel::I => ConstraintPair::new(None, Some(h.h1.clone())),
        CaseLabel::II => ConstraintPair::new(Some(h.h1.clone()), Some(h.h2.clone())),
        CaseLabel::III => ConstraintPair::new(None, Some(h.h2.clone())),
        CaseLabel::IV => ConstraintPair::new(Some(h.h1.clone()), None),
        CaseLabel::V => ConstraintPair::new(Some(h.h2.clone()), None),
        CaseLabel::VI | CaseLabel::VII => unreachable!(),
    }
}

/// `T_{p,u}` for one crucial prime and one value `u` in its range.
pub fn constraint_pair(record: &CrucialPrime, u: &BigUint, d: usize, budget: Budget) -> Result<ConstraintPair> {
    let case = classify(&record.p, record.abs_delta(), u, record.mu())?;
    let h = if record.divides_ten() { None } else { Some(HConstants::compute(&record.p, d, budget)?) };
    Ok(constraint_pair_for_case(case, record, h.as_ref()))
}

pub fn lcm_of<'a, I>(values: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    values.into_iter().fold(BigUint::one(), |acc, x| acc.lcm(x))
}

/// `x ∈ S(A, B)`: every element of `A` divides `x`, no element of `B` does.
pub fn in_s<'a, A, B>(a: A, b: B, x: &BigInt) -> bool
where
    A: IntoIterator<Item = &'a BigUint>,
    B: IntoIterator<Item = &'a BigUint>,
{
    let divides = |m: &BigUint| x.is_multiple_of(&BigInt::from_biguint(Sign::Plus, m.clone()));
    a.into_iter().all(divides) && !b.into_iter().any(divides)
}

/// A characteristic solution with its case table, constraint pairs and the
/// merged sets `A_u`, `B_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionConstraints {
    pub solution: CharSolution,
    pub cases: Vec<CaseLabel>,
    pub pairs: Vec<ConstraintPair>,
    pub a: BTreeSet<BigUint>,
    pub b: BTreeSet<BigUint>,
    /// `S(A_u, B_u)` is empty, i.e. some element of `B_u` divides `lcm(A_u)`.
    pub degenerate: bool,
}

impl SolutionConstraints {
    fn from_parts(solution: CharSolution, cases: Vec<CaseLabel>, pairs: Vec<ConstraintPair>) -> Self {
        let a: BTreeSet<BigUint> = pairs.iter().filter_map(|t| t.a.clone()).collect();
        let b: BTreeSet<BigUint> = pairs.iter().filter_map(|t| t.b.clone()).collect();
        let lcm_a = lcm_of(&a);
        let degenerate = b.iter().any(|m| lcm_a.is_multiple_of(m));
        SolutionConstraints { solution, cases, pairs, a, b, degenerate }
    }

    pub fn lcm_a(&self) -> BigUint {
        lcm_of(&self.a)
    }

    /// `lcm(A_u ∪ B_u)`, a period of the indicator of `S_u`.
    pub fn lcm_all(&self) -> BigUint {
        lcm_of(self.a.iter().chain(&self.b))
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        in_s(&self.a, &self.b, x)
    }
}

/// `A_u`, `B_u` and degeneracy for one solution.
pub fn assemble_constraints(
    solution: &CharSolution,
    records: &[CrucialPrime],
    d: usize,
    budget: Budget,
) -> Result<SolutionConstraints> {
    let h: Vec<Option<HConstants>> = records
        .iter()
        .map(|r| (!r.divides_ten()).then(|| HConstants::compute(&r.p, d, budget)).transpose())
        .collect::<Result<_>>()?;
    assemble_with(solution, records, &h)
}

fn assemble_with(
    solution: &CharSolution,
    records: &[CrucialPrime],
    h: &[Option<HConstants>],
) -> Result<SolutionConstraints> {
    if !solution.is_valid_for(records) {
        return Err(Error::Domain("not a characteristic solution for these crucial primes"));
    }
    let mut cases = Vec::with_capacity(records.len());
    let mut pairs = Vec::with_capacity(records.len());
    for ((record, u), h) in records.iter().zip(&solution.values).zip(h) {
        let case = classify(&record.p, record.abs_delta(), u, record.mu())?;
        pairs.push(constraint_pair_for_case(case, record, h.as_ref()));
        cases.push(case);
    }
    Ok(SolutionConstraints::from_parts(solution.clone(), cases, pairs))
}

/// Everything derived from the crucial primes of one base `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub digits: usize,
    pub records: Vec<CrucialPrime>,
    /// `h` constants aligned with `records`; `None` for 2 and 5.
    pub h: Vec<Option<HConstants>>,
    /// All characteristic solutions, lexicographic.
    pub solutions: Vec<SolutionConstraints>,
}

impl Characteristic {
    pub fn build(records: Vec<CrucialPrime>, digits: usize, budget: Budget) -> Result<Self> {
        let h: Vec<Option<HConstants>> = records
            .iter()
            .map(|r| (!r.divides_ten()).then(|| HConstants::compute(&r.p, digits, budget)).transpose())
            .collect::<Result<_>>()?;
        let solutions =
            solve_characteristic(&records).iter().map(|u| assemble_with(u, &records, &h)).collect::<Result<_>>()?;
        Ok(Characteristic { digits, records, h, solutions })
    }

    pub fn for_number(n: &BigUint, budget: Budget) -> Result<Self> {
        let records = crucial_primes(n, budget)?;
        Characteristic::build(records, digit_count(n), budget)
    }

    pub fn nondegenerate(&self) -> impl Iterator<Item = &SolutionConstraints> {
        self.solutions.iter().filter(|s| !s.degenerate)
    }
}
