//! Homogeneous harmonic witnesses for the `(m, l)` branching slots.
//!
//! Coordinates are `x_1, ..., x_n` (indices `0..n`), with `x' = (x_1, ...,
//! x_{n-1})` spanning the equatorial hyperplane and `x_n` its normal. The
//! witness for slot `(m, l)` is
//! `f = sum_k c_k x_n^(m-l-2k) |x'|^(2k) Y_l(x')`
//! with `Y_l` a sectoral harmonic in `x_1, x_2`.

use num::{BigInt, BigRational, One};

use super::poly::{Monomial, Poly};
use crate::error::{domain, Result};

/// Which sectoral harmonic of `x_1 + i x_2` carries the `l`-dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sectoral {
    /// `Re((x_1 + i x_2)^l)`
    Re,
    /// `Im((x_1 + i x_2)^l)`, only for `l >= 1`
    Im,
}

/// An exactly harmonic homogeneous polynomial on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPoly {
    n: u32,
    degree: u32,
    poly: Poly,
}

impl HarmonicPoly {
    /// Wrap `poly` after checking homogeneity and harmonicity exactly.
    pub fn new(poly: Poly) -> Result<Self> {
        let degree = match poly.homogeneous_degree() {
            Some(d) => d,
            None => return domain("polynomial is not homogeneous"),
        };
        if !poly.laplacian().is_zero() {
            return domain("polynomial is not harmonic");
        }
        Ok(Self {
            n: poly.nvars() as u32,
            degree,
            poly,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn laplacian(&self) -> Poly {
        self.poly.laplacian()
    }

    /// Restriction to the equator `x_n = 0`.
    pub fn restrict(&self) -> Poly {
        self.poly.restrict_last_to_zero()
    }

    /// Squared norm on `S^{n-1}` for the probability measure.
    pub fn norm_sq(&self) -> BigRational {
        self.poly.square().sphere_mean()
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// The sectoral harmonic of degree `l` in `x_1, x_2`, embedded in `nvars`
/// variables.
pub fn sectoral(nvars: usize, l: u32, kind: Sectoral) -> Poly {
    assert!(nvars >= 2);
    let mut p = Poly::zero(nvars);
    // (x1 + i x2)^l = sum_j binom(l, j) x1^(l-j) (i x2)^j
    for j in 0..=l {
        let (keep, sign) = match (kind, j % 4) {
            (Sectoral::Re, 0) => (true, 1),
            (Sectoral::Re, 2) => (true, -1),
            (Sectoral::Im, 1) => (true, 1),
            (Sectoral::Im, 3) => (true, -1),
            _ => (false, 0),
        };
        if keep {
            let mut e = vec![0; nvars];
            e[0] = l - j;
            e[1] = j;
            p.add_term(e, BigRational::from_integer(binomial(l, j) * sign));
        }
    }
    p
}

/// Coefficients `c_0 = 1, c_1, ...` of the radial factor, from
/// `(m-l-2k)(m-l-2k-1) c_k + (2k+2)(2k+2l+n-1) c_{k+1} = 0`.
pub fn radial_coeffs(n: u32, m: u32, l: u32) -> Vec<BigRational> {
    let kmax = (m - l) / 2;
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for k in 0..kmax {
        let a = i64::from(m - l - 2 * k);
        let num = BigInt::from(a * (a - 1));
        let den = BigInt::from((2 * i64::from(k) + 2) * (2 * i64::from(k) + 2 * i64::from(l) + i64::from(n) - 1));
        c = -c * BigRational::new(num, den);
        out.push(c.clone());
    }
    out
}

/// Calls `visit(beta, k!/prod beta_j!)` for every composition of `k` into
/// `parts` nonnegative parts.
fn for_each_composition(parts: usize, k: u32, mut visit: impl FnMut(&[u32], &BigInt)) {
    fn rec(
        idx: usize,
        left: u32,
        beta: &mut Vec<u32>,
        coef: BigInt,
        visit: &mut dyn FnMut(&[u32], &BigInt),
    ) {
        if idx + 1 == beta.len() {
            beta[idx] = left;
            visit(beta, &coef);
            return;
        }
        for b in 0..=left {
            beta[idx] = b;
            rec(idx + 1, left - b, beta, &coef * binomial(left, b), visit);
        }
    }
    if parts == 0 {
        if k == 0 {
            visit(&[], &BigInt::one());
        }
        return;
    }
    let mut beta = vec![0; parts];
    rec(0, k, &mut beta, BigInt::one(), &mut visit);
}

/// `(x_1^2 + ... + x_d^2)^k` placed in the first `d` of `nvars` variables.
pub fn radial_power(nvars: usize, d: usize, k: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for_each_composition(d, k, |beta, c| {
        let mut e: Monomial = vec![0; nvars];
        for (slot, b) in e.iter_mut().zip(beta) {
            *slot = 2 * b;
        }
        p.add_term(e, BigRational::from_integer(c.clone()));
    });
    p
}

fn check_slot(n: u32, m: u32, l: u32) -> Result<()> {
    if n < 3 {
        return domain(format!("n={n} must be at least 3"));
    }
    if l > m {
        return domain(format!("slot (m={m}, l={l}) is empty: l exceeds m"));
    }
    Ok(())
}

/// The witness harmonic for slot `(m, l)` with `Y_l = Re((x_1 + i x_2)^l)`.
pub fn associated_harmonic(n: u32, m: u32, l: u32) -> Result<HarmonicPoly> {
    associated_harmonic_with(n, m, l, Sectoral::Re)
}

/// Like [`associated_harmonic`] with a choice of sectoral factor.
pub fn associated_harmonic_with(n: u32, m: u32, l: u32, kind: Sectoral) -> Result<HarmonicPoly> {
    check_slot(n, m, l)?;
    if kind == Sectoral::Im && l == 0 {
        return domain("Im((x_1 + i x_2)^0) vanishes; use l >= 1");
    }
    let nv = n as usize;
    let y = sectoral(nv, l, kind);
    let mut f = Poly::zero(nv);
    for (k, ck) in radial_coeffs(n, m, l).iter().enumerate() {
        let xn_pow = m - l - 2 * k as u32;
        for_each_composition(nv - 1, k as u32, |beta, mult| {
            let c = ck * BigRational::from_integer(mult.clone());
            for (ey, cy) in y.terms() {
                let mut e = ey.clone();
                for (slot, b) in e.iter_mut().zip(beta) {
                    *slot += 2 * b;
                }
                e[nv - 1] = xn_pow;
                f.add_term(e, &c * cy);
            }
        });
    }
    Ok(HarmonicPoly {
        n,
        degree: m,
        poly: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gegenbauer;
    use num::Zero;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn base_cases() {
        for n in 3..7u32 {
            let nv = n as usize;
            let f = associated_harmonic(n, 1, 1).unwrap();
            let mut e = vec![0; nv];
            e[0] = 1;
            assert_eq!(f.poly(), &Poly::monomial(e, q(1, 1)));
            let f = associated_harmonic(n, 1, 0).unwrap();
            let mut e = vec![0; nv];
            e[nv - 1] = 1;
            assert_eq!(f.poly(), &Poly::monomial(e, q(1, 1)));
        }
    }

    #[test]
    fn degree_two_zonal_on_s2() {
        let f = associated_harmonic(3, 2, 0).unwrap();
        let mut want = Poly::zero(3);
        want.add_term(vec![0, 0, 2], q(1, 1));
        want.add_term(vec![2, 0, 0], q(-1, 2));
        want.add_term(vec![0, 2, 0], q(-1, 2));
        assert_eq!(f.poly(), &want);
        assert!(f.laplacian().is_zero());
    }

    #[test]
    fn witnesses_are_harmonic() {
        for n in 3..6 {
            for m in 0..7 {
                for l in 0..=m {
                    let f = associated_harmonic(n, m, l).unwrap();
                    assert!(f.laplacian().is_zero(), "n={n} m={m} l={l}");
                    assert_eq!(f.poly().homogeneous_degree(), Some(m));
                    assert!(HarmonicPoly::new(f.poly().clone()).is_ok());
                    if l >= 1 {
                        let g = associated_harmonic_with(n, m, l, Sectoral::Im).unwrap();
                        assert!(g.laplacian().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_slots() {
        assert!(associated_harmonic(4, 2, 3).is_err());
        assert!(associated_harmonic(2, 2, 1).is_err());
        assert!(associated_harmonic_with(4, 2, 0, Sectoral::Im).is_err());
        let mut p = Poly::zero(2);
        p.add_term(vec![2, 0], q(1, 1));
        assert!(HarmonicPoly::new(p).is_err());
    }

    #[test]
    fn radial_power_counts() {
        // (x^2 + y^2 + z^2)^2 has 6 monomials, coefficients 1 and 2
        let p = radial_power(3, 3, 2);
        assert_eq!(p.len(), 6);
        assert_eq!(p.terms()[&vec![2, 2, 0]], q(2, 1));
        assert_eq!(p.terms()[&vec![4, 0, 0]], q(1, 1));
    }

    /// The Gegenbauer form `|x|^k C_k^lambda(x_n/|x|) Y_l`, `lambda = l + (n-2)/2`,
    /// spans the same slot, so it is a scalar multiple of the witness.
    #[test]
    fn gegenbauer_form_is_proportional() {
        for n in 3..6u32 {
            for m in 0..7u32 {
                for l in 0..=m {
                    let nv = n as usize;
                    let k = m - l;
                    let lambda = q(i64::from(2 * l + n - 2), 2);
                    let g = gegenbauer(k, &lambda).unwrap();
                    let y = sectoral(nv, l, Sectoral::Re);
                    let mut alt = Poly::zero(nv);
                    for (j, cj) in g.coeffs.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        let half = (k - j as u32) / 2;
                        // |x|^(2 half) over all n coordinates
                        let r = radial_power(nv, nv, half);
                        let mut xn = vec![0; nv];
                        xn[nv - 1] = j as u32;
                        let term = r.mul(&Poly::monomial(xn, cj.clone())).mul(&y);
                        for (e, c) in term.terms() {
                            alt.add_term(e.clone(), c.clone());
                        }
                    }
                    let f = associated_harmonic(n, m, l).unwrap();
                    let (e0, c0) = f.poly().terms().iter().next().unwrap();
                    let ratio = &alt.terms()[e0] / c0;
                    assert_eq!(f.poly().scale(&ratio), alt, "n={n} m={m} l={l}");
                }
            }
        }
    }
}
