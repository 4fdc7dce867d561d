//! Gegenbauer polynomials with exact rational coefficients.

use num::{BigRational, One, Signed, Zero};

use crate::error::{domain, Result};

/// `C_k^lambda(t)` in the monomial basis: `coeffs[j]` multiplies `t^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GegenbauerPoly {
    pub degree: u32,
    pub lambda: BigRational,
    pub coeffs: Vec<BigRational>,
}

impl GegenbauerPoly {
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + num::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
    }
}

/// Build `C_k^lambda` from the three-term recurrence
/// `k C_k = 2 (k + lambda - 1) t C_{k-1} - (k + 2 lambda - 2) C_{k-2}`.
pub fn gegenbauer(k: u32, lambda: &BigRational) -> Result<GegenbauerPoly> {
    if !lambda.is_positive() {
        return domain(format!("Gegenbauer index must be positive, got {lambda}"));
    }
    let one = BigRational::one();
    let two = &one + &one;
    let mut prev: Vec<BigRational> = vec![one.clone()];
    if k == 0 {
        return Ok(GegenbauerPoly {
            degree: 0,
            lambda: lambda.clone(),
            coeffs: prev,
        });
    }
    let mut cur = vec![BigRational::zero(), &two * lambda];
    for d in 2..=k {
        let dq = BigRational::from_integer(d.into());
        let a = &two * (&dq + lambda - &one) / &dq;
        let b = (&dq + &two * lambda - &two) / &dq;
        let mut next = vec![BigRational::zero(); d as usize + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += &a * c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= &b * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(GegenbauerPoly {
        degree: k,
        lambda: lambda.clone(),
        coeffs: cur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::exact::pochhammer;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn base_cases() {
        let lam = q(7, 3);
        assert_eq!(gegenbauer(0, &lam).unwrap().coeffs, vec![q(1, 1)]);
        assert_eq!(gegenbauer(1, &lam).unwrap().coeffs, vec![q(0, 1), q(14, 3)]);
        assert!(gegenbauer(2, &q(0, 1)).is_err());
    }

    #[test]
    fn degree_two_three_halves() {
        let p = gegenbauer(2, &q(3, 2)).unwrap();
        assert_eq!(p.coeffs, vec![q(-3, 2), q(0, 1), q(15, 2)]);
        // C_k^lambda(1) = (2 lambda)_k / k!
        assert_eq!(p.eval(&q(1, 1)), pochhammer(&q(3, 1), 2) / q(2, 1));
    }

    #[test]
    fn value_at_one_and_parity() {
        for lam in [q(1, 2), q(1, 1), q(5, 2), q(7, 3)] {
            let mut fact = q(1, 1);
            for k in 0..15u32 {
                if k > 0 {
                    fact *= q(k as i64, 1);
                }
                let p = gegenbauer(k, &lam).unwrap();
                assert_eq!(p.eval(&q(1, 1)), pochhammer(&(&lam * q(2, 1)), k) / &fact);
                assert!(!p.coeffs[k as usize].is_zero());
                for (j, c) in p.coeffs.iter().enumerate() {
                    if (j as u32 + k) % 2 == 1 {
                        assert!(c.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_special_case() {
        // lambda = 1/2 gives Legendre: P_3 = (5t^3 - 3t)/2
        let p = gegenbauer(3, &q(1, 2)).unwrap();
        assert_eq!(p.coeffs, vec![q(0, 1), q(-3, 2), q(0, 1), q(5, 2)]);
        assert!((p.eval_f64(0.5) + 0.4375).abs() < 1e-15);
    }
}
