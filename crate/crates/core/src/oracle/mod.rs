//! Ground truth independent of the indicator construction: deciding
//! v-palindromicity of `n(k)` straight from factorizations, comparing that
//! with the indicator, and scanning ranges of `n` for counterexamples.

mod brute;
mod invariance;
mod search;
mod verify;

pub use brute::{brute_force_flag, cyclotomic_at_ten, factor_rho, BruteForceMode, Verdict};
pub use invariance::{
    invariance_entry, representations, type_invariance_scan, type_verdict, InvarianceEntry, TypeVerdict,
};
pub use search::{check_property, search, search_with, SearchConfig, SearchHit, SearchProperty};
pub use verify::{valuation_cross_check, verify, verify_row, Verification, VerificationRow, VerificationSummary};
