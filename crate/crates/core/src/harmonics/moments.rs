//! Exact moments of the uniform probability measure on spheres.

use num::{BigRational, Zero};

use crate::specfun::{gamma_half_integer, pochhammer};

/// `int_{S^{n-1}} x^alpha dsigma` for the probability measure `sigma`.
///
/// Missing trailing exponents are zero. Vanishes unless every exponent is
/// even; otherwise equals
/// `Gamma(n/2) prod_j Gamma((alpha_j+1)/2) / (Gamma(1/2)^n Gamma((|alpha|+n)/2))`.
pub fn sphere_moment(n: u32, alpha: &[u32]) -> BigRational {
    assert!(alpha.len() <= n as usize, "more exponents than coordinates");
    if alpha.iter().any(|a| a % 2 == 1) {
        return BigRational::zero();
    }
    let total: u32 = alpha.iter().sum();
    let mut acc = gamma_half_integer(n) / gamma_half_integer(total + n);
    for &a in alpha.iter().filter(|&&a| a > 0) {
        acc = acc * (gamma_half_integer(a + 1) / gamma_half_integer(1));
    }
    match acc.as_rational() {
        Some(r) => r.clone(),
        None => unreachable!("sqrt(pi) powers cancel for even exponents"),
    }
}

/// `int_{S^{n-1}} x_n^(2a) |x'|^(2b) dsigma` where `x' = (x_1, ..., x_{n-1})`.
///
/// Treats `x'` as one radial block of dimension `n-1`:
/// `(1/2)_a ((n-1)/2)_b / (n/2)_(a+b)`.
pub fn radial_moment(n: u32, a: u32, b: u32) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    let block = BigRational::new((n - 1).into(), 2.into());
    let whole = BigRational::new(n.into(), 2.into());
    pochhammer(&half, a) * pochhammer(&block, b) / pochhammer(&whole, a + b)
}

#[cfg(test)]
/// Same quantity via the half-integer Gamma representation, for cross-checks.
pub(crate) fn radial_moment_gamma(n: u32, a: u32, b: u32) -> BigRational {
    let num = gamma_half_integer(2 * a + 1) * gamma_half_integer(2 * b + n - 1) * gamma_half_integer(n);
    let den = gamma_half_integer(1) * gamma_half_integer(n - 1) * gamma_half_integer(2 * (a + b) + n);
    let r: crate::specfun::SqrtPiMultiple = num / den;
    r.as_rational().cloned().expect("sqrt(pi) powers cancel")
}
