use num_bigint::{BigInt, BigUint, Sign};
use serde::{Deserialize, Serialize};

use super::combination::{expand_solution, IndicatorCombination, Order};
use crate::characteristic::{crucial_primes_from, lcm_of, CaseLabel, Characteristic, SolutionConstraints};
use crate::error::Result;
use crate::number::{check_eligible, factorize, reverse_digits, Budget, DigitNumber, Factorization};

/// The indicator combination of a characteristic analysis: the sum of
/// [`expand_solution`] over the nondegenerate solutions.
pub fn indicator_of(ch: &Characteristic) -> IndicatorCombination {
    ch.nondegenerate().fold(IndicatorCombination::zero(), |acc, s| acc.add(&expand_solution(s)))
}

pub fn indicator_for(n: &BigUint, budget: Budget) -> Result<IndicatorCombination> {
    Ok(indicator_of(&Characteristic::for_number(n, budget)?))
}

/// `lcm{h(p,2,d) : p crucial, p not 2 or 5}`.
pub fn omega_f_of(ch: &Characteristic) -> BigUint {
    lcm_of(ch.h.iter().flatten().map(|h| &h.h2))
}

pub fn omega_f(n: &BigUint, budget: Budget) -> Result<BigUint> {
    Ok(omega_f_of(&Characteristic::for_number(n, budget)?))
}

/// `lcm` of every modulus in `A_u ∪ B_u` over the nondegenerate solutions.
pub fn omega_b_of(ch: &Characteristic) -> BigUint {
    lcm_of(ch.nondegenerate().flat_map(|s| s.a.iter().chain(&s.b)))
}

pub fn omega_b(n: &BigUint, budget: Budget) -> Result<BigUint> {
    Ok(omega_b_of(&Characteristic::for_number(n, budget)?))
}

/// The nondegenerate solution whose set `S_u` contains `k`. At most one
/// exists since the sets are disjoint.
pub fn type_in<'a>(ch: &'a Characteristic, k: &BigUint) -> Option<&'a SolutionConstraints> {
    let k = BigInt::from_biguint(Sign::Plus, k.clone());
    ch.nondegenerate().find(|s| s.contains(&k))
}

/// Type of `n(k)` as the tuple `(u_p)`, or `None` when `n(k)` is not a
/// v-palindrome.
pub fn type_of(n: &BigUint, k: &BigUint, budget: Budget) -> Result<Option<Vec<BigUint>>> {
    let ch = Characteristic::for_number(n, budget)?;
    Ok(type_in(&ch, k).map(|s| s.solution.values.clone()))
}

/// Full analysis of one base `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: DigitNumber,
    pub reverse: BigUint,
    pub factorization_n: Factorization,
    pub factorization_reverse: Factorization,
    pub characteristic: Characteristic,
    pub indicator: IndicatorCombination,
    pub order: Order,
    pub omega0: BigUint,
    pub omega_f: BigUint,
    pub omega_b: BigUint,
}

impl AnalysisReport {
    pub fn digits(&self) -> usize {
        self.n.digit_count()
    }

    pub fn nondegenerate(&self) -> impl Iterator<Item = &SolutionConstraints> {
        self.characteristic.nondegenerate()
    }

    /// Whether `n(k)` is a v-palindrome according to the indicator.
    pub fn predicts(&self, k: u64) -> bool {
        self.indicator.evaluate_u64(k) == 1
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson::from(self)
    }
}

pub fn analyze(n: &BigUint, budget: Budget) -> Result<AnalysisReport> {
    check_eligible(n)?;
    let reverse = reverse_digits(n);
    let factorization_n = factorize(n, budget)?;
    let factorization_reverse = factorize(&reverse, budget)?;
    let records = crucial_primes_from(&factorization_n, &factorization_reverse);
    let n = DigitNumber::new(n.clone());
    let characteristic = Characteristic::build(records, n.digit_count(), budget)?;
    let indicator = indicator_of(&characteristic);
    Ok(AnalysisReport {
        order: indicator.order(),
        omega0: indicator.fundamental_period(),
        omega_f: omega_f_of(&characteristic),
        omega_b: omega_b_of(&characteristic),
        n,
        reverse,
        factorization_n,
        factorization_reverse,
        characteristic,
        indicator,
    })
}

// JSON shape. Fields are declared in alphabetical order so the serialized
// key order is canonical; every integer is a decimal string.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrucialPrimeJson {
    pub a: String,
    pub b: String,
    pub delta: String,
    pub mu: String,
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerJson {
    pub exponent: String,
    pub prime: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub lambda: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub cases: Vec<String>,
    pub constraints: Vec<String>,
    pub degenerate: bool,
    pub u: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub crucial_primes: Vec<CrucialPrimeJson>,
    pub digits: String,
    pub factorization_n: Vec<PrimePowerJson>,
    pub factorization_reverse: Vec<PrimePowerJson>,
    pub indicator: Vec<TermJson>,
    pub n: String,
    pub omega0: String,
    pub omega_b: String,
    pub omega_f: String,
    /// Decimal string, or `"infinity"`.
    pub order: String,
    pub reverse: String,
    pub solutions: Vec<SolutionJson>,
}

fn strings<'a, T: ToString + 'a>(xs: impl IntoIterator<Item = &'a T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn powers(f: &Factorization) -> Vec<PrimePowerJson> {
    f.factors().iter().map(|(p, e)| PrimePowerJson { exponent: e.to_string(), prime: p.to_string() }).collect()
}

impl From<&AnalysisReport> for ReportJson {
    fn from(r: &AnalysisReport) -> Self {
        let ch = &r.characteristic;
        ReportJson {
            crucial_primes: ch
                .records
                .iter()
                .map(|c| CrucialPrimeJson {
                    a: c.a.to_string(),
                    b: c.b.to_string(),
                    delta: c.delta().to_string(),
                    mu: c.mu().to_string(),
                    p: c.p.to_string(),
                })
                .collect(),
            digits: r.digits().to_string(),
            factorization_n: powers(&r.factorization_n),
            factorization_reverse: powers(&r.factorization_reverse),
            indicator: r
                .indicator
                .terms()
                .iter()
                .map(|(c, l)| TermJson { c: c.to_string(), lambda: l.to_string() })
                .collect(),
            n: r.n.to_string(),
            omega0: r.omega0.to_string(),
            omega_b: r.omega_b.to_string(),
            omega_f: r.omega_f.to_string(),
            order: r.order.to_string(),
            reverse: r.reverse.to_string(),
            solutions: ch
                .solutions
                .iter()
                .map(|s| SolutionJson {
                    a: strings(&s.a),
                    b: strings(&s.b),
                    cases: s.cases.iter().map(|c: &CaseLabel| c.roman().to_string()).collect(),
                    constraints: strings(&s.pairs),
                    degenerate: s.degenerate,
                    u: strings(&s.solution.values),
                })
                .collect(),
        }
    }
}

impl ReportJson {
    /// The indicator combination carried by the JSON, if well formed.
    pub fn indicator(&self) -> Option<IndicatorCombination> {
        let terms = self
            .indicator
            .iter()
            .map(|t| Some((t.c.parse::<BigUint>().ok()?, t.lambda.parse::<i64>().ok()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(IndicatorCombination::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn report(n: u64) -> AnalysisReport {
        analyze(&b(n), Budget::default()).unwrap()
    }

    #[test]
    fn analysis_of_126() {
        let r = report(126);
        assert_eq!(r.indicator.to_string(), "I_154 - I_3542");
        assert_eq!(r.order, Order::Finite(b(154)));
        assert_eq!(r.omega0, b(3542));
        assert_eq!(r.omega_f, b(31878));
        assert_eq!(r.omega_b, b(3542));
        assert_eq!(r.reverse, b(621));
        assert_eq!(r.nondegenerate().count(), 1);
    }

    #[test]
    fn analysis_of_small_bases() {
        let r = report(13);
        assert_eq!(r.indicator.to_string(), "I_15 - I_195 - I_465 + 2I_6045");
        assert_eq!(r.omega_b, b(6045));
        assert_eq!(report(18).indicator.to_string(), "I_1");
        let r = report(48);
        assert_eq!(r.indicator.to_string(), "I_3 - I_21");
        assert_eq!(r.order, Order::Finite(b(3)));
        assert_eq!(r.omega0, b(21));
        assert_eq!(
            report(122).indicator.to_string(),
            "I_80 - I_1040 - I_1360 - I_4880 + I_17680 + 2I_63440 + 2I_82960 - 3I_1078480"
        );
    }

    #[test]
    fn analysis_of_12_is_empty() {
        let r = report(12);
        assert!(r.indicator.is_empty());
        assert_eq!(r.order, Order::Infinite);
        assert_eq!(r.omega0, b(1));
        assert_eq!(r.omega_b, b(1));
    }

    #[test]
    fn omega_f_of_126_from_h_values() {
        let h = |p: u64| crate::number::h(&b(p), 2, 3, Budget::default()).unwrap();
        assert_eq!((h(3), h(7), h(23)), (b(9), b(14), b(506)));
        assert_eq!(omega_f(&b(126), Budget::default()).unwrap(), b(31878));
    }

    #[test]
    fn omega_f_is_one_without_odd_crucial_primes() {
        let ch =
            Characteristic::build(vec![crate::characteristic::CrucialPrime::new(b(2), 1, 0)], 2, Budget::default())
                .unwrap();
        assert_eq!(omega_f_of(&ch), b(1));
    }

    #[test]
    fn types() {
        let budget = Budget::default();
        assert_eq!(type_of(&b(13), &b(15), budget).unwrap(), Some(vec![b(2), b(2)]));
        assert_eq!(type_of(&b(13), &b(1), budget).unwrap(), None);
        assert_eq!(type_of(&b(126), &b(154), budget).unwrap(), Some(vec![b(2), b(1), b(1), b(2)]));
        assert!(type_of(&b(121), &b(1), budget).is_err());
    }

    #[test]
    fn json_shape() {
        let j = report(126).to_json();
        assert_eq!(j.n, "126");
        assert_eq!(j.order, "154");
        assert_eq!(j.omega_f, "31878");
        assert_eq!(j.solutions.len(), 7);
        assert_eq!(j.solutions[3].u, vec!["2", "1", "1", "2"]);
        assert!(!j.solutions[3].degenerate);
        assert_eq!(j.indicator().unwrap().to_string(), "I_154 - I_3542");
        assert_eq!(report(12).to_json().order, "infinity");
    }
}
