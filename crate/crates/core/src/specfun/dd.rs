//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
//!
//! Only the handful of operations needed by the log-Gamma evaluation are
//! provided. All operations are built from `+ - * /` and `mul_add`, so they
//! are symmetric under negation of their inputs.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Quotient of two doubles to double-double accuracy.
    pub fn ratio(a: f64, b: f64) -> Self {
        Self::from_f64(a) / Self::from_f64(b)
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    /// Multiply by an exact power of two.
    fn scale(self, factor: f64) -> Self {
        Self {
            hi: self.hi * factor,
            lo: self.lo * factor,
        }
    }

    /// Natural logarithm. `self` must be positive.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let (mant, exp) = frexp(self.hi);
        let (mant, exp) = if mant < std::f64::consts::FRAC_1_SQRT_2 {
            (mant * 2.0, exp - 1)
        } else {
            (mant, exp)
        };
        // `mant` now lies in [1/sqrt2, sqrt2); `mant / hi` is a power of two.
        let lo = if self.lo == 0.0 {
            0.0
        } else {
            self.lo * (mant / self.hi)
        };
        let m = Self { hi: mant, lo };
        let s = (m - Self::ONE) / (m + Self::ONE);
        let s2 = s * s;
        let coeffs = atanh_coeffs();
        let mut acc = coeffs[coeffs.len() - 1];
        for c in coeffs.iter().rev().skip(1) {
            acc = acc * s2 + *c;
        }
        (s * acc).scale(2.0) + LN2.mul_f64(f64::from(exp))
    }
}

/// `1/(2j+1)` for the series `atanh(s)/s = sum s^(2j)/(2j+1)`.
fn atanh_coeffs() -> &'static [DoubleDouble; 23] {
    static COEFFS: OnceLock<[DoubleDouble; 23]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [DoubleDouble::ZERO; 23];
        for (j, c) in out.iter_mut().enumerate() {
            *c = DoubleDouble::ratio(1.0, (2 * j + 1) as f64);
        }
        out
    })
}

/// Split a positive normal double into `mant * 2^exp` with `mant` in [0.5, 1).
fn frexp(x: f64) -> (f64, i32) {
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    if raw_exp == 0 {
        // subnormal: renormalize first
        let (m, e) = frexp(x * f64::powi(2.0, 64));
        return (m, e - 64);
    }
    let exp = raw_exp - 1022;
    let mant = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (mant, exp)
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frexp_splits() {
        assert_eq!(frexp(1.0), (0.5, 1));
        assert_eq!(frexp(0.75), (0.75, 0));
        assert_eq!(frexp(6.0), (0.75, 3));
        let (m, e) = frexp(1e-310);
        assert!((0.5..1.0).contains(&m));
        assert_eq!(m * 2f64.powi(e + 64), 1e-310 * 2f64.powi(64));
    }

    #[test]
    fn ln_of_two_and_e() {
        let l2 = DoubleDouble::from_f64(2.0).ln();
        assert_eq!(l2.hi, LN2.hi);
        assert!((l2.lo - LN2.lo).abs() < 1e-31);
        // ln(pi) reference from a 50-digit evaluation
        let lpi = DoubleDouble::from_f64(std::f64::consts::PI).ln();
        let lpi_ref = DoubleDouble {
            hi: 1.1447298858494002,
            lo: 1.0265951162707826e-17,
        };
        // PI as a double differs from pi by ~1.2e-16, i.e. ln differs by ~3.9e-17
        let d = (lpi - lpi_ref).to_f64();
        assert!((d - (-1.2246467991473532e-16 / std::f64::consts::PI)).abs() < 1e-30);
    }

    #[test]
    fn ln_product_rule() {
        for &(a, b) in &[(3.0, 7.0), (0.1, 1234.5), (1e-5, 1e5), (1.0000001, 0.9999999)] {
            let lhs = (DoubleDouble::from_f64(a) * DoubleDouble::from_f64(b)).ln();
            let rhs = DoubleDouble::from_f64(a).ln() + DoubleDouble::from_f64(b).ln();
            assert!((lhs - rhs).to_f64().abs() < 1e-29, "{a} {b}");
        }
    }

    #[test]
    fn division_roundtrip() {
        let a = DoubleDouble::ratio(1.0, 3.0);
        let back = a * DoubleDouble::from_f64(3.0);
        assert!((back - DoubleDouble::ONE).to_f64().abs() < 1e-31);
    }
}
