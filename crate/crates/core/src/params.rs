//! Parameter arithmetic for complementary series points of SO(n,1).
//!
//! A point is a triple `(n, i, u)`: the group SO(n,1), the M-type given by
//! the `i`-th exterior power of the standard representation of the compact
//! part of the Levi, and the continuous parameter `u`. Restricting to
//! SO(n-1,1) sends `u` to `u' = ((n-1)u - 1)/(n-2)`.
//!
//! Window membership for floating inputs uses the absolute tolerance
//! [`WINDOW_TOL`]: a value within `WINDOW_TOL` of a bound counts as lying on
//! that bound, hence outside the open window. Rational inputs go through the
//! `*_exact` variants and are compared without tolerance.

use num::rational::Ratio;
use num::One;
use serde::Serialize;

use crate::error::{domain, Result};

/// Absolute tolerance for comparing floating parameters against window bounds.
pub const WINDOW_TOL: f64 = 1e-12;

/// Exact rational parameter type.
pub type Rational = Ratio<i64>;

/// An open interval `(lo, hi)`; empty when `lo >= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    /// Strict membership with the [`WINDOW_TOL`] boundary band excluded.
    pub fn contains(&self, u: f64) -> bool {
        u.is_finite() && u > self.lo + WINDOW_TOL && u < self.hi - WINDOW_TOL
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }
}

fn check_rank(n: u32, i: u32) -> Result<()> {
    if n < 3 {
        return domain(format!("rank parameter n={n} must be at least 3"));
    }
    if i + 1 > n / 2 {
        return domain(format!(
            "exterior degree i={i} exceeds floor(n/2)-1={} for n={n}",
            (n / 2) as i64 - 1
        ));
    }
    Ok(())
}

/// Exact bounds `(1/(n-1), 1 - 2i/(n-1))` of the branching window.
pub fn window_exact(n: u32, i: u32) -> Result<(Rational, Rational)> {
    check_rank(n, i)?;
    let d = i64::from(n) - 1;
    let lo = Rational::new(1, d);
    let hi = Rational::one() - Rational::new(2 * i64::from(i), d);
    Ok((lo, hi))
}

/// The branching window `1/(n-1) < u < 1 - 2i/(n-1)`.
pub fn window(n: u32, i: u32) -> Result<Window> {
    let (lo, hi) = window_exact(n, i)?;
    Ok(Window {
        lo: ratio_to_f64(lo),
        hi: ratio_to_f64(hi),
    })
}

/// The admissible (unitarity) window `0 < u < 1 - 2i/(n-1)`.
pub fn admissible_window(n: u32, i: u32) -> Result<Window> {
    let w = window(n, i)?;
    Ok(Window { lo: 0.0, hi: w.hi })
}

pub(crate) fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A complementary series point `(n, i, u)`.
///
/// Construction accepts `i` up to `floor(n/2)` so that tempered terminal
/// points of restriction chains (`n = 2i` or `n = 2i + 1`) can be
/// represented; the windows themselves are empty there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPoint {
    pub n: u32,
    pub i: u32,
    pub u: f64,
}

impl ParamPoint {
    pub fn new(n: u32, i: u32, u: f64) -> Result<Self> {
        if n < 3 {
            return domain(format!("rank parameter n={n} must be at least 3"));
        }
        if i > n / 2 {
            return domain(format!("exterior degree i={i} exceeds floor(n/2) for n={n}"));
        }
        if !u.is_finite() {
            return domain(format!("parameter u={u} is not finite"));
        }
        Ok(Self { n, i, u })
    }

    /// `n = 2i` or `n = 2i + 1`: the cohomological representation of degree
    /// `i` is tempered for this group.
    pub fn is_tempered_size(&self) -> bool {
        self.n == 2 * self.i || self.n == 2 * self.i + 1
    }

    pub fn window(&self) -> Result<Window> {
        window(self.n, self.i)
    }

    pub fn is_admissible(&self) -> bool {
        admissible_window(self.n, self.i)
            .map(|w| w.contains(self.u))
            .unwrap_or(false)
    }

    pub fn in_branching_window(&self) -> bool {
        window(self.n, self.i)
            .map(|w| w.contains(self.u))
            .unwrap_or(false)
    }
}

fn branch_formula(n: u32, u: f64) -> f64 {
    let n = f64::from(n);
    ((n - 1.0) * u - 1.0) / (n - 2.0)
}

fn branch_formula_exact(n: u32, u: Rational) -> Rational {
    let n = i64::from(n);
    (u * (n - 1) - Rational::one()) / (n - 2)
}

/// `u' = ((n-1)u - 1)/(n-2)` for a point inside its branching window.
pub fn branch_param(p: &ParamPoint) -> Result<f64> {
    let w = p.window()?;
    if !w.contains(p.u) {
        return domain(format!(
            "u={} outside the branching window ({}, {}) for n={}, i={}",
            p.u, w.lo, w.hi, p.n, p.i
        ));
    }
    Ok(branch_formula(p.n, p.u))
}

/// Exact form of [`branch_param`]; membership is tested without tolerance.
pub fn branch_param_exact(n: u32, i: u32, u: Rational) -> Result<Rational> {
    let (lo, hi) = window_exact(n, i)?;
    if !(u > lo && u < hi) {
        return domain(format!(
            "u={u} outside the branching window ({lo}, {hi}) for n={n}, i={i}"
        ));
    }
    Ok(branch_formula_exact(n, u))
}

/// Endpoint of the window and its image one rank down.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndpointMap {
    pub u_end: f64,
    pub u_end_next: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub u_end_exact: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub u_end_next_exact: Rational,
    /// The second reducibility endpoint `1 - (2i+2)/(n-1)`, exposed as data
    /// only.
    #[serde(serialize_with = "ser_ratio")]
    pub second_endpoint_exact: Rational,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `u_end = 1 - 2i/(n-1)` and the branching formula applied to it, which is
/// `1 - 2i/(n-2)` exactly.
pub fn endpoint_map(n: u32, i: u32) -> Result<EndpointMap> {
    let (lo, hi) = window_exact(n, i)?;
    if lo >= hi {
        return domain(format!("window for n={n}, i={i} is empty"));
    }
    let next = branch_formula_exact(n, hi);
    let d = i64::from(n) - 1;
    let second = Rational::one() - Rational::new(2 * i64::from(i) + 2, d);
    Ok(EndpointMap {
        u_end: ratio_to_f64(hi),
        u_end_next: ratio_to_f64(next),
        u_end_exact: hi,
        u_end_next_exact: next,
        second_endpoint_exact: second,
    })
}

/// Why a restriction chain stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStop {
    /// The group size reached `2i` or `2i + 1`.
    Tempered,
    /// The next point would leave its branching window.
    LeftWindow,
    /// `max_steps` applications were made.
    MaxSteps,
}

/// The sequence of points obtained by restricting one rank at a time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainTrace {
    pub start: ParamPoint,
    /// Points after each restriction, in order; `start` is not included.
    pub steps: Vec<ParamPoint>,
    pub stop: ChainStop,
    pub terminated_tempered: bool,
    /// Group size `n` of the last point of the chain.
    pub terminal_m: Option<u32>,
}

impl ChainTrace {
    /// All points including the start.
    pub fn points(&self) -> impl Iterator<Item = &ParamPoint> {
        std::iter::once(&self.start).chain(self.steps.iter())
    }

    /// Pairs `(p, q)` two restrictions apart, i.e. `q.n = p.n - 2`.
    pub fn double_steps(&self) -> Vec<(ParamPoint, ParamPoint)> {
        let pts: Vec<_> = self.points().copied().collect();
        pts.windows(3).map(|w| (w[0], w[2])).collect()
    }
}

/// Apply the branching map repeatedly, lowering `n` by one each time.
///
/// Stops when the current group size is `2i` or `2i+1`, when the next point
/// would fall outside its branching window, or after `max_steps` steps.
/// A start point outside its window yields an empty chain.
pub fn iterate_chain(p: &ParamPoint, max_steps: usize) -> ChainTrace {
    let mut steps = Vec::new();
    let mut cur = *p;
    let stop = loop {
        if cur.is_tempered_size() {
            break ChainStop::Tempered;
        }
        if !cur.in_branching_window() {
            break ChainStop::LeftWindow;
        }
        if steps.len() >= max_steps {
            break ChainStop::MaxSteps;
        }
        let next_u = branch_formula(cur.n, cur.u);
        let next = ParamPoint {
            n: cur.n - 1,
            i: cur.i,
            u: next_u,
        };
        if next.is_tempered_size() {
            steps.push(next);
            break ChainStop::Tempered;
        }
        if next.n < 3 || !next.in_branching_window() {
            break ChainStop::LeftWindow;
        }
        steps.push(next);
        cur = next;
    };
    let last = steps.last().unwrap_or(p);
    ChainTrace {
        start: *p,
        terminated_tempered: stop == ChainStop::Tempered,
        terminal_m: Some(last.n),
        steps,
        stop,
    }
}
