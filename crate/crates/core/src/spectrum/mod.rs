//! Periodic arithmetical functions `f: Z -> C` written as finite sums over
//! roots of unity,
//!
//! ```text
//!   f(x) = sum_{zeta} g(zeta) zeta^x,
//! ```
//!
//! together with the map `g -> f` and its inverse on sample vectors, three
//! independent ways to find a fundamental period, and the decomposition into
//! Ramanujan components (one per root order).
//!
//! Coefficients here are `f64` complex numbers. Indicator combinations also
//! have an exact rational path in [`exact`].

mod exact;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::indicator::IndicatorCombination;

pub use exact::{ramanujan_sum, DivisorSpectrum};

/// Coefficients below this magnitude are treated as zero after inversion.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// Cap on the number of explicit roots [`combination_spectrum`] will build.
pub const MAX_EXPLICIT_ROOTS: u64 = 2_000_000;

/// The root of unity `e(num/den)` with `0 <= num < den`, `gcd(num, den) = 1`.
/// Ordered by denominator, then numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootIndex {
    den: u64,
    num: u64,
}

impl RootIndex {
    /// Reduces `num/den` modulo 1.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "root order must be positive");
        let num = num % den;
        let g = num.gcd(&den);
        RootIndex { den: den / g, num: num / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Order of the root, `delta(zeta)`.
    pub fn den(&self) -> u64 {
        self.den
    }

    /// `zeta^x`.
    pub fn power(&self, x: i64) -> Complex64 {
        let r = (self.num as i128 * x as i128).rem_euclid(self.den as i128);
        Complex64::from_polar(1.0, TAU * r as f64 / self.den as f64)
    }
}

impl fmt::Display for RootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Finitely supported coefficients `g(zeta)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectralMap {
    entries: BTreeMap<RootIndex, Complex64>,
}

impl SpectralMap {
    pub fn new() -> Self {
        SpectralMap::default()
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (RootIndex, Complex64)>,
    {
        let mut g = SpectralMap::new();
        for (r, c) in entries {
            g.add(r, c);
        }
        g
    }

    /// Adds `c` to the coefficient at `root`, removing it if it becomes zero.
    pub fn add(&mut self, root: RootIndex, c: Complex64) {
        let slot = self.entries.entry(root).or_insert(Complex64::zero());
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&root);
        }
    }

    pub fn get(&self, root: &RootIndex) -> Complex64 {
        self.entries.get(root).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootIndex, &Complex64)> {
        self.entries.iter()
    }

    /// Drops entries with magnitude below `tol`.
    pub fn pruned(&self, tol: f64) -> SpectralMap {
        SpectralMap { entries: self.entries.iter().filter(|(_, c)| c.norm() >= tol).map(|(r, c)| (*r, *c)).collect() }
    }
}

/// `f(0), ..., f(period - 1)` of an `omega`-periodic function.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    period: usize,
    values: Vec<Complex64>,
}

impl PeriodicSamples {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a periodic sample vector needs at least one value"));
        }
        Ok(PeriodicSamples { period: values.len(), values })
    }

    pub fn from_real<I: IntoIterator<Item = f64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, x: i64) -> Complex64 {
        self.values[x.rem_euclid(self.period as i64) as usize]
    }

    /// Largest pointwise distance to another vector of the same period.
    pub fn max_distance(&self, other: &PeriodicSamples) -> f64 {
        assert_eq!(self.period, other.period);
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub fn eval_spectrum(g: &SpectralMap, x: i64) -> Complex64 {
    g.iter().map(|(r, c)| c * r.power(x)).sum()
}

/// `lcm{delta(zeta) : g(zeta) != 0}`, and 1 for the empty map.
pub fn support_period(g: &SpectralMap) -> u64 {
    g.iter().fold(1u64, |acc, (r, _)| acc.lcm(&r.den()))
}

/// Finite Fourier inversion: `g(e(r/omega)) = (1/omega) sum_x f(x) e(-rx/omega)`.
pub fn samples_to_spectrum(s: &PeriodicSamples) -> SpectralMap {
    let w = s.period as u64;
    let mut g = SpectralMap::new();
    for r in 0..w {
        let root = RootIndex::new(r, w);
        let h: Complex64 =
            s.values.iter().enumerate().map(|(x, f)| f * root.power(-(x as i64))).sum::<Complex64>() / w as f64;
        if h.norm() >= ZERO_TOLERANCE {
            g.add(root, h);
        }
    }
    g
}

pub fn spectrum_to_samples(g: &SpectralMap, omega: u64) -> Result<PeriodicSamples> {
    let required = support_period(g);
    if omega == 0 || omega % required != 0 {
        return Err(Error::PeriodMismatch { omega, required });
    }
    PeriodicSamples::new((0..omega as i64).map(|x| eval_spectrum(g, x)).collect())
}

/// Period from the expansion `f(x) = sum_{k=1}^{omega} h_k zeta_omega^{-xk}`:
/// `omega / gcd(k_1, ..., k_l, omega)` over the `k` with `h_k != 0`.
pub fn expansion_period(s: &PeriodicSamples) -> u64 {
    let w = s.period as u64;
    let zeta = RootIndex::new(1, w);
    let mut g = w;
    for k in 1..=w {
        let h: Complex64 =
            s.values.iter().enumerate().map(|(x, f)| f * zeta.power((x as u64 * k % w) as i64)).sum::<Complex64>()
                / w as f64;
        if h.norm() >= ZERO_TOLERANCE {
            g = g.gcd(&k);
        }
    }
    w / g
}

/// Smallest divisor `t` of the sample period with `f(x + t) = f(x)` for all
/// `x`, up to [`ZERO_TOLERANCE`].
pub fn naive_fundamental_period(s: &PeriodicSamples) -> u64 {
    let w = s.period;
    (1..=w)
        .filter(|t| w % t == 0)
        .find(|&t| (0..w).all(|x| (s.values[(x + t) % w] - s.values[x]).norm() < ZERO_TOLERANCE))
        .unwrap_or(w) as u64
}

/// Splits `g` by root order: the component at `d` lives in the Ramanujan
/// space spanned by the primitive `d`-th roots.
pub fn ramanujan_components(g: &SpectralMap) -> BTreeMap<u64, SpectralMap> {
    let mut out: BTreeMap<u64, SpectralMap> = BTreeMap::new();
    for (r, c) in g.iter() {
        out.entry(r.den()).or_default().add(*r, *c);
    }
    out
}

/// `I_a(x) = (1/a) sum_{zeta^a = 1} zeta^x`.
pub fn indicator_spectrum(a: u64) -> SpectralMap {
    assert!(a >= 1, "indicator modulus must be positive");
    let c = Complex64::new(1.0 / a as f64, 0.0);
    SpectralMap::from_entries((0..a).map(|r| (RootIndex::new(r, a), c)))
}

/// `sum_j lambda_j * indicator_spectrum(c_j)`, built from the exact net
/// coefficient of each root order so cancelled orders leave no residue.
///
/// Fails when a modulus does not fit in `u64` or the result would need more
/// than [`MAX_EXPLICIT_ROOTS`] entries; use [`DivisorSpectrum`] then.
pub fn combination_spectrum(comb: &IndicatorCombination) -> Result<SpectralMap> {
    let omega0 = comb.fundamental_period().to_u64().ok_or(Error::Domain("period does not fit in 64 bits"))?;
    if omega0 > MAX_EXPLICIT_ROOTS {
        return Err(Error::Domain("too many roots for an explicit spectrum"));
    }
    let exact = DivisorSpectrum::from_small_combination(comb)?;
    let mut g = SpectralMap::new();
    for (d, coef) in exact.coefficients_u64() {
        let c = Complex64::new(coef, 0.0);
        for r in (0..d).filter(|r| r.gcd(&d) == 1) {
            g.add(RootIndex::new(r, d), c);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    fn real(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn samples(v: &[f64]) -> PeriodicSamples {
        PeriodicSamples::from_real(v.iter().copied()).unwrap()
    }

    #[test]
    fn root_index_is_reduced() {
        let r = RootIndex::new(2, 4);
        assert_eq!((r.num(), r.den()), (1, 2));
        assert_eq!(RootIndex::new(6, 6), RootIndex::new(0, 1));
        assert_eq!(RootIndex::new(7, 3).to_string(), "1/3");
    }

    #[test]
    fn evaluation_examples() {
        let one = SpectralMap::from_entries([(RootIndex::new(0, 1), real(1.0))]);
        assert!(close(eval_spectrum(&one, 17), real(1.0)));
        let alt = SpectralMap::from_entries([(RootIndex::new(1, 2), real(1.0))]);
        assert!(close(eval_spectrum(&alt, 3), real(-1.0)));
        assert!(close(eval_spectrum(&indicator_spectrum(2), 4), real(1.0)));
    }

    #[test]
    fn support_periods() {
        let g = SpectralMap::from_entries([
            (RootIndex::new(1, 3), real(2.0)),
            (RootIndex::new(1, 4), Complex64::new(0.0, 1.0)),
        ]);
        assert_eq!(support_period(&g), 12);
        assert_eq!(support_period(&SpectralMap::new()), 1);
    }

    #[test]
    fn inversion_examples() {
        let g = samples_to_spectrum(&samples(&[5.0]));
        assert_eq!(g.len(), 1);
        assert!(close(g.get(&RootIndex::new(0, 1)), real(5.0)));

        let g = samples_to_spectrum(&samples(&[1.0, 0.0]));
        assert_eq!(g.len(), 2);
        assert!(close(g.get(&RootIndex::new(0, 1)), real(0.5)));
        assert!(close(g.get(&RootIndex::new(1, 2)), real(0.5)));

        let g = samples_to_spectrum(&samples(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|(_, c)| close(*c, real(0.25))));
    }

    #[test]
    fn forward_examples() {
        let alt = SpectralMap::from_entries([(RootIndex::new(1, 2), real(1.0))]);
        let s = spectrum_to_samples(&alt, 2).unwrap();
        assert!(close(s.values()[0], real(1.0)) && close(s.values()[1], real(-1.0)));
        let s = spectrum_to_samples(&indicator_spectrum(3), 3).unwrap();
        assert!(s.max_distance(&samples(&[1.0, 0.0, 0.0])) < 1e-9);
        assert!(matches!(
            spectrum_to_samples(&indicator_spectrum(3), 4),
            Err(Error::PeriodMismatch { omega: 4, required: 3 })
        ));
    }

    #[test]
    fn period_formulas() {
        assert_eq!(expansion_period(&samples(&[4.0; 6])), 1);
        let i3 = samples(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(expansion_period(&i3), 3);
        assert_eq!(naive_fundamental_period(&i3), 3);
        assert_eq!(naive_fundamental_period(&samples(&[1.0, 0.0, 1.0, 0.0])), 2);
        assert_eq!(naive_fundamental_period(&samples(&[1.0, 2.0, 3.0, 1.0, 2.0, 3.0])), 3);
        assert_eq!(expansion_period(&samples(&[0.0; 5])), 1);
    }

    #[test]
    fn indicator_spectra() {
        let g = indicator_spectrum(1);
        assert_eq!(g.len(), 1);
        let g = indicator_spectrum(6);
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|(_, c)| close(*c, real(1.0 / 6.0))));
        let dens: Vec<u64> = ramanujan_components(&g).keys().copied().collect();
        assert_eq!(dens, vec![1, 2, 3, 6]);
        let dens: Vec<u64> = ramanujan_components(&indicator_spectrum(4)).keys().copied().collect();
        assert_eq!(dens, vec![1, 2, 4]);
    }

    #[test]
    fn combination_spectra() {
        let comb: IndicatorCombination = "I_2 - I_6".parse().unwrap();
        let g = combination_spectrum(&comb).unwrap();
        let parts = ramanujan_components(&g);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert!(close(parts[&1].get(&RootIndex::new(0, 1)), real(1.0 / 3.0)));
        assert!(close(parts[&2].get(&RootIndex::new(1, 2)), real(1.0 / 3.0)));

        let one: IndicatorCombination = "I_1".parse().unwrap();
        let g = combination_spectrum(&one).unwrap();
        assert_eq!(g.len(), 1);
        assert!(close(g.get(&RootIndex::new(0, 1)), real(1.0)));

        let comb: IndicatorCombination = "I_3 - I_21".parse().unwrap();
        assert_eq!(support_period(&combination_spectrum(&comb).unwrap()), 21);
        let comb: IndicatorCombination = "I_154 - I_3542".parse().unwrap();
        assert_eq!(support_period(&combination_spectrum(&comb).unwrap()), 3542);

        let zero = IndicatorCombination::zero();
        assert!(combination_spectrum(&zero).unwrap().is_empty());
        let huge: IndicatorCombination = "I_2782759700".parse().unwrap();
        assert!(combination_spectrum(&huge).is_err());
    }

    #[test]
    fn indicator_126_period_by_sampling() {
        let comb: IndicatorCombination = "I_154 - I_3542".parse().unwrap();
        let s = PeriodicSamples::from_real((0..2 * 3542u64).map(|x| comb.evaluate_u64(x) as f64)).unwrap();
        assert_eq!(naive_fundamental_period(&s), 3542);
    }
}
