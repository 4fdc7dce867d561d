//! Exact values: rising factorials and Gamma at half-integers.

use std::ops::{Div, Mul};

use num::{BigInt, BigRational, One, Zero};

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// A number of the form `coef * sqrt(pi)^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPiMultiple {
    pub coef: BigRational,
    pub sqrt_pi_power: i32,
}

impl SqrtPiMultiple {
    pub fn rational(coef: BigRational) -> Self {
        Self {
            coef,
            sqrt_pi_power: 0,
        }
    }

    /// The rational value, when no power of `sqrt(pi)` remains.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.sqrt_pi_power == 0 || self.coef.is_zero()).then_some(&self.coef)
    }
}

impl Mul for SqrtPiMultiple {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            coef: self.coef * rhs.coef,
            sqrt_pi_power: self.sqrt_pi_power + rhs.sqrt_pi_power,
        }
    }
}

impl Div for SqrtPiMultiple {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self {
            coef: self.coef / rhs.coef,
            sqrt_pi_power: self.sqrt_pi_power - rhs.sqrt_pi_power,
        }
    }
}

/// `Gamma(k/2)` for an integer `k >= 1`, exactly.
pub fn gamma_half_integer(k: u32) -> SqrtPiMultiple {
    assert!(k >= 1, "Gamma(k/2) needs k >= 1");
    if k.is_multiple_of(2) {
        // Gamma(j) = (j-1)!
        let j = k / 2;
        let mut f = BigInt::one();
        for t in 2..j {
            f *= t;
        }
        SqrtPiMultiple::rational(BigRational::from_integer(f))
    } else {
        // Gamma(j + 1/2) = (1/2)_j sqrt(pi)
        let j = (k - 1) / 2;
        let half = BigRational::new(1.into(), 2.into());
        SqrtPiMultiple {
            coef: pochhammer(&half, j),
            sqrt_pi_power: 1,
        }
    }
}
