//! Eigenvalues of the standard intertwining operator on K-types.
//!
//! On the degree-`m` harmonics the operator acts by
//!
//! ```text
//! lambda_m(u) = Gamma(rho(1+u)) / Gamma(rho(1-u)) * Gamma(m + rho(1-u)) / Gamma(m + rho(1+u))
//! ```
//!
//! with `rho = (n-1)/2`, normalized so that `lambda_0 = 1`. Stirling's
//! formula gives `lambda_m ~ c m^{-(n-1)u}`, the weight appearing in the
//! boundedness criterion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun::{gamma_ratio_log_shifted, gamma_ratio_log_unchecked};

/// `log lambda_m(u)` for `m = 0..=mmax`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub n: u32,
    pub u: f64,
    log_values: Vec<f64>,
}

impl Spectrum {
    /// Wrap precomputed log-eigenvalues, e.g. synthetic data for the fitter.
    pub fn from_log_values(n: u32, u: f64, log_values: Vec<f64>) -> Result<Self> {
        if log_values.is_empty() {
            return domain("a spectrum needs at least the m = 0 value");
        }
        Ok(Self { n, u, log_values })
    }

    pub fn mmax(&self) -> usize {
        self.log_values.len() - 1
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    pub fn log_lambda(&self, m: usize) -> Option<f64> {
        self.log_values.get(m).copied()
    }

    pub fn lambda(&self, m: usize) -> Option<f64> {
        self.log_lambda(m).map(f64::exp)
    }

    /// `rho = (n-1)/2`.
    pub fn rho(&self) -> f64 {
        rho(self.n)
    }

    /// The exact step `lambda_{m+1} / lambda_m = (m + rho(1-u)) / (m + rho(1+u))`.
    pub fn recurrence_ratio(&self, m: usize) -> f64 {
        let r = self.rho();
        let m = m as f64;
        (m + r * (1.0 - self.u)) / (m + r * (1.0 + self.u))
    }
}

fn rho(n: u32) -> f64 {
    (f64::from(n) - 1.0) / 2.0
}

/// `lambda_m(u)` for `m = 0..=mmax`, evaluated in log space.
pub fn lambda_spectrum(n: u32, u: f64, mmax: usize) -> Result<Spectrum> {
    if n < 3 {
        return domain(format!("n={n} must be at least 3"));
    }
    if !(u > 0.0 && u < 1.0) {
        return domain(format!("spectrum needs 0 < u < 1, got u={u}"));
    }
    let r = rho(n);
    let a = r * (1.0 - u);
    let b = r * (1.0 + u);
    let head = gamma_ratio_log_unchecked(b, a);
    let mut log_values = Vec::with_capacity(mmax + 1);
    log_values.push(0.0);
    for m in 1..=mmax {
        let r = gamma_ratio_log_shifted(m as f64, a, b).expect("positive arguments");
        log_values.push(head + r);
    }
    Ok(Spectrum { n, u, log_values })
}

/// Least-squares slope of `log lambda_m` against `log m` over `[m_lo, m_hi]`.
pub fn asymptotic_exponent(s: &Spectrum, m_lo: usize, m_hi: usize) -> Result<f64> {
    if m_lo < 10 || m_hi < 2 * m_lo || m_hi > s.mmax() {
        return domain(format!(
            "fit range [{m_lo}, {m_hi}] needs m_lo >= 10, m_hi >= 2 m_lo and m_hi <= {}",
            s.mmax()
        ));
    }
    let points: Vec<(f64, f64)> = (m_lo..=m_hi)
        .map(|m| ((m as f64).ln(), s.log_values[m]))
        .collect();
    crate::criterion::loglog_slope(&points)
        .map(|fit| fit.slope)
        .ok_or_else(|| crate::Error::Domain("degenerate fit range: fewer than 10 points".into()))
}

/// Shared store of spectra keyed by `(n, u)`.
///
/// An entry is computed once and reused for every request up to its
/// length; a longer request replaces it with a longer spectrum whose
/// prefix is bit-identical, because each `lambda_m` is evaluated
/// independently of the others.
#[derive(Debug, Default)]
pub struct SpectrumCache {
    entries: Mutex<HashMap<(u32, u64), Arc<Spectrum>>>,
}

impl SpectrumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u32, u: f64, mmax: usize) -> Result<Arc<Spectrum>> {
        let key = (n, u.to_bits());
        let mut map = self.entries.lock().expect("cache lock poisoned");
        if let Some(s) = map.get(&key) {
            if s.mmax() >= mmax {
                return Ok(Arc::clone(s));
            }
        }
        let s = Arc::new(lambda_spectrum(n, u, mmax)?);
        map.insert(key, Arc::clone(&s));
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_first_step() {
        for n in 3..9 {
            for &u in &[0.1, 0.5, 0.9] {
                let s = lambda_spectrum(n, u, 3).unwrap();
                assert_eq!(s.lambda(0), Some(1.0));
                let want = (1.0 - u) / (1.0 + u);
                assert!((s.lambda(1).unwrap() / want - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn chained_recurrence_at_ten() {
        let s = lambda_spectrum(4, 0.5, 10).unwrap();
        let chained: f64 = (0..10).map(|m| s.recurrence_ratio(m)).product();
        assert!((s.lambda(10).unwrap() / chained - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positive_and_decreasing() {
        let s = lambda_spectrum(7, 0.35, 2000).unwrap();
        let vals: Vec<f64> = (0..=2000).map(|m| s.lambda(m).unwrap()).collect();
        assert!(vals.iter().all(|&v| v > 0.0));
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn stirling_consistency() {
        let (n, u) = (5, 0.4);
        let s = lambda_spectrum(n, u, 8000).unwrap();
        let d = |m: usize| s.log_lambda(m).unwrap() + f64::from(n - 1) * u * (m as f64).ln();
        for m in [100usize, 400, 1000, 4000] {
            assert!((d(2 * m) - d(m)).abs() < 2.0 / m as f64, "m={m}");
        }
    }

    #[test]
    fn slopes() {
        let s = lambda_spectrum(3, 0.6, 5000).unwrap();
        let p = asymptotic_exponent(&s, 500, 5000).unwrap();
        assert!((p / -1.2 - 1.0).abs() < 0.02);
        let s = lambda_spectrum(6, 0.3, 5000).unwrap();
        let p = asymptotic_exponent(&s, 500, 5000).unwrap();
        assert!((p / -1.5 - 1.0).abs() < 0.02);
        let flat = Spectrum::from_log_values(3, 0.5, vec![0.0; 100]).unwrap();
        assert_eq!(asymptotic_exponent(&flat, 10, 40).unwrap(), 0.0);
        assert!(asymptotic_exponent(&flat, 5, 40).is_err());
        assert!(asymptotic_exponent(&flat, 30, 50).is_err());
    }

    #[test]
    fn rejects_bad_u() {
        for u in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(lambda_spectrum(4, u, 5).is_err());
        }
    }

    #[test]
    fn cache_reuses_prefixes() {
        let cache = SpectrumCache::new();
        let a = cache.get(4, 0.5, 100).unwrap();
        let b = cache.get(4, 0.5, 50).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = cache.get(4, 0.5, 200).unwrap();
        assert_eq!(&c.log_values()[..=100], a.log_values());
        assert_eq!(cache.len(), 1);
    }
}
