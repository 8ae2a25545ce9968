use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indicator::{analyze, AnalysisReport};
use crate::number::{check_eligible, Budget};

/// Properties mined by [`search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchProperty {
    /// `omega0(n)` is neither 1 nor `omega_f(n)`.
    OmegaFCounterexample,
    /// `omega0(n)` is neither 1 nor `omega_b(n)`.
    OmegaBCounterexample,
    /// Some `c_j` does not divide the last modulus `c_q`.
    DivisibilityAnomaly,
}

impl SearchProperty {
    pub fn name(self) -> &'static str {
        match self {
            SearchProperty::OmegaFCounterexample => "conj1",
            SearchProperty::OmegaBCounterexample => "omegab",
            SearchProperty::DivisibilityAnomaly => "anomaly",
        }
    }
}

impl fmt::Display for SearchProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchProperty {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "conj1" => Ok(SearchProperty::OmegaFCounterexample),
            "omegab" => Ok(SearchProperty::OmegaBCounterexample),
            "anomaly" => Ok(SearchProperty::DivisibilityAnomaly),
            _ => Err(format!("unknown property {s:?} (expected conj1, omegab or anomaly)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub n: u64,
    pub property: SearchProperty,
    pub report: AnalysisReport,
    /// For anomalies: the first `c_j` with `c_j ∤ c_q`, and `c_q`.
    pub witness: Option<(BigUint, BigUint)>,
}

/// Checks one report; `Some(witness)` on a hit.
pub fn check_property(report: &AnalysisReport, property: SearchProperty) -> Option<Option<(BigUint, BigUint)>> {
    let one = BigUint::one();
    match property {
        SearchProperty::OmegaFCounterexample => {
            (report.omega0 != one && report.omega0 != report.omega_f).then_some(None)
        }
        SearchProperty::OmegaBCounterexample => {
            (report.omega0 != one && report.omega0 != report.omega_b).then_some(None)
        }
        SearchProperty::DivisibilityAnomaly => {
            let (last, _) = report.indicator.terms().last()?;
            report.indicator.moduli().find(|c| !last.is_multiple_of(c)).map(|c| Some((c.clone(), last.clone())))
        }
    }
}

/// Search parameters. Results do not depend on `workers`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
    /// Stop after the first hit.
    pub first_only: bool,
    pub budget: Budget,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: 1, first_only: false, budget: Budget::default() }
    }
}

const CHUNK: u64 = 512;

fn scan(lo: u64, hi: u64, property: SearchProperty, budget: Budget) -> Result<Vec<SearchHit>> {
    (lo..hi)
        .into_par_iter()
        .filter(|&n| check_eligible(&BigUint::from(n)).is_ok())
        .map(|n| {
            let report = analyze(&BigUint::from(n), budget)?;
            Ok(check_property(&report, property).map(|witness| SearchHit { n, property, report, witness }))
        })
        .filter_map(|r: Result<Option<SearchHit>>| r.transpose())
        .collect::<Result<Vec<_>>>()
}

/// Scans eligible `n` in `2..=range_end` in increasing order and reports every
/// hit (or the first), sorted by `n`.
///
/// `on_hit` is called for each hit in order as soon as its chunk completes.
pub fn search_with<F>(
    range_end: u64,
    property: SearchProperty,
    config: SearchConfig,
    mut on_hit: F,
) -> Result<Vec<SearchHit>>
where
    F: FnMut(&SearchHit),
{
    if range_end < 2 {
        return Err(Error::Domain("search range must end at 2 or above"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|_| Error::Domain("could not start the worker pool"))?;
    let mut hits = Vec::new();
    let mut lo = 1u64;
    while lo <= range_end {
        let hi = (lo + CHUNK).min(range_end + 1);
        let mut chunk = pool.install(|| scan(lo, hi, property, config.budget))?;
        chunk.sort_by_key(|h| h.n);
        for hit in chunk {
            on_hit(&hit);
            hits.push(hit);
            if config.first_only {
                return Ok(hits);
            }
        }
        lo = hi;
    }
    Ok(hits)
}

pub fn search(range_end: u64, property: SearchProperty, config: SearchConfig) -> Result<Vec<SearchHit>> {
    search_with(range_end, property, config, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_omega_f_counterexample() {
        let config = SearchConfig { workers: 2, first_only: true, ..Default::default() };
        let hits = search(200, SearchProperty::OmegaFCounterexample, config).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].n, 126);
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = search(300, SearchProperty::OmegaFCounterexample, SearchConfig::default()).unwrap();
        let parallel =
            search(300, SearchProperty::OmegaFCounterexample, SearchConfig { workers: 4, ..Default::default() })
                .unwrap();
        let ns = |h: &[SearchHit]| h.iter().map(|x| x.n).collect::<Vec<_>>();
        assert_eq!(ns(&serial), ns(&parallel));
        assert!(ns(&serial).windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn property_names_round_trip() {
        for p in [
            SearchProperty::OmegaFCounterexample,
            SearchProperty::OmegaBCounterexample,
            SearchProperty::DivisibilityAnomaly,
        ] {
            assert_eq!(p.name().parse::<SearchProperty>().unwrap(), p);
        }
        assert!("nope".parse::<SearchProperty>().is_err());
    }
}
