//! Branching coefficients `C(m, l, 0) = ||r(f)||^2 / ||f||^2` for the slot
//! witness `f`, with probability measures on `S^{n-1}` and on the equator.
//!
//! Three routes are provided:
//!
//! * [`branch_coeff_exact`]: exact rational. The witness factors as
//!   `P(x_n, |x'|^2) Y_l(x')`; `Y_l^2` averages over the equatorial sphere to a
//!   constant times `|x'|^(2l)`, and that constant also multiplies the
//!   restricted norm, so it cancels. What is left is a double sum of
//!   two-block sphere moments in `x_n` and `|x'|`.
//! * [`branch_coeff_expanded`]: exact rational from the fully expanded
//!   monomial map of the witness and its square. Slow; used to validate the
//!   first route and to compare sectoral witnesses.
//! * [`branch_coeff_fast`]: binary64 closed form through Gamma ratios.

use num::{BigRational, ToPrimitive, Zero};

use super::moments::radial_moment;
use super::witness::{associated_harmonic_with, radial_coeffs, Sectoral};
use crate::error::{domain, Result};
use crate::specfun::gamma_ratio_log_unchecked;

fn check_slot(n: u32, m: u32, l: u32) -> Result<()> {
    if n < 3 {
        return domain(format!("n={n} must be at least 3"));
    }
    if l > m {
        return domain(format!("slot (m={m}, l={l}) is empty: l exceeds m"));
    }
    Ok(())
}

/// Exact `C(m, l, 0)`; zero exactly when `m - l` is odd.
pub fn branch_coeff_exact(n: u32, m: u32, l: u32) -> Result<BigRational> {
    check_slot(n, m, l)?;
    let k = m - l;
    if k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let c = radial_coeffs(n, m, l);
    let top = c.last().expect("at least c_0");
    let restricted = top * top;
    // ||P Y_l||^2 / N_l = sum_{j, j'} c_j c_j' <x_n^(2k - 2(j+j')) |x'|^(2(j+j'+l))>
    let half = c.len() - 1;
    let mut full = BigRational::zero();
    for s in 0..=2 * half {
        let lo = s.saturating_sub(half);
        let hi = s.min(half);
        let mut conv = BigRational::zero();
        for j in lo..=hi {
            conv += &c[j] * &c[s - j];
        }
        if conv.is_zero() {
            continue;
        }
        let s = s as u32;
        full += conv * radial_moment(n, k - s, s + l);
    }
    Ok(restricted / full)
}

/// Exact `C(m, l, 0)` from the expanded witness polynomial.
pub fn branch_coeff_expanded(n: u32, m: u32, l: u32, kind: Sectoral) -> Result<BigRational> {
    let f = associated_harmonic_with(n, m, l, kind)?;
    let restricted = f.restrict();
    if restricted.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(restricted.square().sphere_mean() / f.norm_sq())
}

/// `C(m, l, 0)` in binary64 through log-space Gamma ratios.
///
/// With `k = m - l` even, `j = k/2` and `lambda = l + (n-2)/2`:
/// `C = (k + lambda) Gamma(j+lambda) Gamma(j+1/2) Gamma((n-1)/2)
///      / (sqrt(pi) Gamma(j+lambda+1/2) Gamma(j+1) Gamma(n/2))`.
pub fn branch_coeff_fast(n: u32, m: u32, l: u32) -> Result<f64> {
    check_slot(n, m, l)?;
    Ok(FastCoeff::new(n).eval(m, l))
}

/// Precomputed `n`-dependent part of [`branch_coeff_fast`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct FastCoeff {
    n: f64,
    offset: f64,
}

impl FastCoeff {
    pub(crate) fn new(n: u32) -> Self {
        let nf = f64::from(n);
        let offset = -gamma_ratio_log_unchecked(nf / 2.0, (nf - 1.0) / 2.0)
            - 0.5 * std::f64::consts::PI.ln();
        Self { n: nf, offset }
    }

    /// Caller guarantees `l <= m`.
    pub(crate) fn eval(&self, m: u32, l: u32) -> f64 {
        let k = m - l;
        if k % 2 == 1 {
            return 0.0;
        }
        let j = f64::from(k / 2);
        let lambda = f64::from(l) + (self.n - 2.0) / 2.0;
        let log_c = (f64::from(k) + lambda).ln()
            + gamma_ratio_log_unchecked(j + lambda, j + lambda + 0.5)
            + gamma_ratio_log_unchecked(j + 0.5, j + 1.0)
            + self.offset;
        log_c.exp()
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn anchors() {
        for n in 3..10u32 {
            let ni = i64::from(n);
            assert_eq!(branch_coeff_exact(n, 0, 0).unwrap(), q(1, 1));
            assert_eq!(branch_coeff_exact(n, 1, 1).unwrap(), q(ni, ni - 1));
            assert_eq!(branch_coeff_exact(n, 2, 0).unwrap(), q(ni + 2, 2 * ni - 2));
            assert!(branch_coeff_exact(n, 3, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn reduced_route_matches_expansion() {
        for n in 3..6u32 {
            for m in 0..7u32 {
                for l in 0..=m {
                    let a = branch_coeff_exact(n, m, l).unwrap();
                    let b = branch_coeff_expanded(n, m, l, Sectoral::Re).unwrap();
                    assert_eq!(a, b, "n={n} m={m} l={l}");
                }
            }
        }
    }

    #[test]
    fn fast_examples() {
        let exact = rational_to_f64(&branch_coeff_exact(5, 7, 7).unwrap());
        let fast = branch_coeff_fast(5, 7, 7).unwrap();
        assert!((fast / exact - 1.0).abs() < 1e-10);
        assert_eq!(branch_coeff_fast(4, 6, 3).unwrap(), 0.0);
        let exact = rational_to_f64(&branch_coeff_exact(3, 2, 2).unwrap());
        assert!((branch_coeff_fast(3, 2, 2).unwrap() / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_empty_slots() {
        assert!(branch_coeff_exact(4, 2, 3).is_err());
        assert!(branch_coeff_fast(4, 2, 3).is_err());
        assert!(branch_coeff_exact(2, 2, 0).is_err());
    }
}
