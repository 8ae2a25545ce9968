use num_bigint::{BigInt, BigUint, Sign};

use super::brute::{brute_force_flag, BruteForceMode, Verdict};
use crate::characteristic::{phi, Characteristic};
use crate::error::Result;
use crate::indicator::{analyze, AnalysisReport};
use crate::number::{digit_count, ord_p, rho, Budget};

/// One `k`: the indicator's prediction against the brute-force observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationRow {
    pub k: u64,
    pub predicted: bool,
    pub observed: Verdict,
    /// `None` when the observation is unverified.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerificationSummary {
    pub agree: usize,
    pub disagree: usize,
    pub unverified: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub report: AnalysisReport,
    pub rows: Vec<VerificationRow>,
    pub summary: VerificationSummary,
}

impl Verification {
    pub fn all_agree(&self) -> bool {
        self.summary.disagree == 0
    }
}

pub fn verify_row(report: &AnalysisReport, k: u64, mode: BruteForceMode, budget: Budget) -> Result<VerificationRow> {
    let predicted = report.predicts(k);
    let observed = brute_force_flag(report.n.value(), k, mode, budget)?;
    let agrees = observed.as_bool().map(|o| o == predicted);
    Ok(VerificationRow { k, predicted, observed, agrees })
}

/// Rows for `k = 1..=k_max`.
pub fn verify(n: &BigUint, k_max: u64, mode: BruteForceMode, budget: Budget) -> Result<Verification> {
    let report = analyze(n, budget)?;
    let rows = (1..=k_max).map(|k| verify_row(&report, k, mode, budget)).collect::<Result<Vec<_>>>()?;
    let mut summary = VerificationSummary::default();
    for row in &rows {
        match row.agrees {
            Some(true) => summary.agree += 1,
            Some(false) => summary.disagree += 1,
            None => summary.unverified += 1,
        }
    }
    Ok(Verification { report, rows, summary })
}

/// Computes `u_p = phi(mu_p + ord_p(rho_k))` from the explicit integer
/// `rho_k` and checks that `k ∈ S_u` holds for exactly the solution equal to
/// that tuple (and for none when the tuple is not a solution).
pub fn valuation_cross_check(n: &BigUint, k: u64, budget: Budget) -> Result<bool> {
    let ch = Characteristic::for_number(n, budget)?;
    let r = rho(k, digit_count(n));
    let observed: Vec<BigUint> =
        ch.records.iter().map(|c| phi(&c.p, c.abs_delta(), c.mu() + ord_p(&r, &c.p))).collect();
    let k = BigInt::from_biguint(Sign::Plus, BigUint::from(k));
    Ok(ch.solutions.iter().all(|s| s.contains(&k) == (s.solution.values == observed)))
}
