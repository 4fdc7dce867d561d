//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};

use num::{BigRational, Zero};

use super::moments::sphere_moment;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables stored as a monomial-to-coefficient map.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: Monomial, coef: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coef);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Monomial, coef: BigRational) {
        assert_eq!(exps.len(), self.nvars, "monomial arity mismatch");
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `Some(d)` when every term has total degree `d`; `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|x| x == d).then_some(d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                acc.entry(e)
                    .and_modify(|v| *v += &c)
                    .or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// The Euclidean Laplacian `sum_j d^2/dx_j^2`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for j in 0..self.nvars {
                let a = e[j];
                if a >= 2 {
                    let mut f = e.clone();
                    f[j] -= 2;
                    out.add_term(f, c * BigRational::from_integer((a * (a - 1)).into()));
                }
            }
        }
        out
    }

    /// Substitute `x_last = 0`, giving a polynomial in one fewer variable.
    pub fn restrict_last_to_zero(&self) -> Self {
        let k = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[k] == 0)
            .map(|(e, c)| (e[..k].to_vec(), c.clone()))
            .collect();
        Self { nvars: k, terms }
    }

    /// Integral over the unit sphere in `R^nvars` against the probability
    /// measure.
    pub fn sphere_mean(&self) -> BigRational {
        let n = self.nvars as u32;
        self.terms
            .iter()
            .filter(|(e, _)| e.iter().all(|a| a % 2 == 0))
            .map(|(e, c)| c * sphere_moment(n, e))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }
}
