use num::{BigUint, One, Zero};

use crate::error::{domain, Result};

fn binom(a: i64, b: i64) -> BigUint {
    if b < 0 || a < b {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for j in 0..b {
        acc = acc * BigUint::from((a - j) as u64) / BigUint::from((j + 1) as u64);
    }
    acc
}

/// Dimension of the degree-`m` spherical harmonics on `S^{n-1}`:
/// `binom(n+m-1, m) - binom(n+m-3, m-2)`.
pub fn dim_harmonics(n: u32, m: u32) -> Result<BigUint> {
    if n < 2 {
        return domain(format!("dim_harmonics needs n >= 2, got {n}"));
    }
    let (n, m) = (i64::from(n), i64::from(m));
    Ok(binom(n + m - 1, m) - binom(n + m - 3, m - 2))
}

/// Checks `dim(n, m) = sum_{l <= m} dim(n-1, l)` for every `m <= mmax`.
pub fn branching_identity_check(n: u32, mmax: u32) -> bool {
    if n < 3 {
        return false;
    }
    (0..=mmax).all(|m| {
        let lhs = dim_harmonics(n, m).expect("n >= 3");
        let rhs = (0..=m)
            .map(|l| dim_harmonics(n - 1, l).expect("n - 1 >= 2"))
            .fold(BigUint::zero(), |a, b| a + b);
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u32, m: u32) -> u64 {
        dim_harmonics(n, m).unwrap().try_into().unwrap()
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(d(3, 2), 5);
        for k in 1..20 {
            assert_eq!(d(2, k), 2);
            assert_eq!(d(3, k), 2 * u64::from(k) + 1);
        }
        assert_eq!(d(2, 0), 1);
        assert_eq!(d(4, 1), 4);
        assert_eq!(d(4, 2), 9);
        assert!(dim_harmonics(1, 3).is_err());
    }

    #[test]
    fn branching_identity() {
        assert!(branching_identity_check(3, 2));
        assert!(branching_identity_check(4, 1));
        assert!(branching_identity_check(10, 30));
        assert!(!branching_identity_check(2, 3));
    }
}
