//! The canonical indicator combination `I^n = sum_j lambda_j I_{c_j}` and the
//! quantities read off from it: `c(n)`, `omega0(n)`, `omega_f(n)`, `omega_b(n)`
//! and the type of `n(k)`.

mod combination;
mod report;

pub use combination::{expand_solution, IndicatorCombination, Order, ParseCombinationError};
pub use report::{
    analyze, indicator_for, indicator_of, omega_b, omega_b_of, omega_f, omega_f_of, type_in, type_of, AnalysisReport,
    CrucialPrimeJson, PrimePowerJson, ReportJson, SolutionJson, TermJson,
};
