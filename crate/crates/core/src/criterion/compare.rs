//! The ramified series through the comparison `C(m,l,i) <= gamma C(m,l,0)`.

use serde::Serialize;

use super::CriterionReport;
use crate::error::{domain, Error, Result};
use crate::harmonics::{BranchTable, Provenance};
use crate::params::window;

/// Upper bound `gamma * sup_bound` for the degree-`i` series, valid whenever
/// the ramified coefficients are dominated by `gamma` times the spherical
/// ones.
///
/// The report must come from an internal `i = 0` table at a `u` inside the
/// degree-`i` window.
pub fn ramified_bound(report: &CriterionReport, i: u32, gamma: f64) -> Result<Option<f64>> {
    if report.i != 0 || report.table_provenance == Provenance::ExternalFile {
        return domain("the comparison needs a report computed from an internal i=0 table");
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return domain(format!("gamma={gamma} must be finite and nonnegative"));
    }
    let w = window(report.n, i)?;
    if !w.contains(report.u) {
        return domain(format!(
            "u={} outside the window ({}, {}) for n={}, i={i}",
            report.u, w.lo, w.hi, report.n
        ));
    }
    Ok(report.sup_bound.map(|s| gamma * s))
}

/// Empirical comparison constant between a ramified and a spherical table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableComparison {
    /// Largest ratio over slots where the spherical entry is positive;
    /// `None` when there is no such slot.
    pub gamma_hat: Option<f64>,
    /// Slots where the ramified entry is positive but the spherical one is
    /// zero, so no finite constant can dominate.
    pub violations: Vec<(usize, usize)>,
}

pub fn compare_tables(ramified: &BranchTable, unramified: &BranchTable) -> Result<TableComparison> {
    if ramified.n() != unramified.n()
        || ramified.mmax() != unramified.mmax()
        || ramified.lmax() != unramified.lmax()
    {
        return Err(Error::Shape(format!(
            "tables differ in shape: (n={}, mmax={}, lmax={}) vs (n={}, mmax={}, lmax={})",
            ramified.n(),
            ramified.mmax(),
            ramified.lmax(),
            unramified.n(),
            unramified.mmax(),
            unramified.lmax()
        )));
    }
    if ramified.i() == 0 || unramified.i() != 0 {
        return Err(Error::Shape(format!(
            "expected a ramified (i >= 1) and a spherical (i = 0) table, got i={} and i={}",
            ramified.i(),
            unramified.i()
        )));
    }
    let mut gamma_hat: Option<f64> = None;
    let mut violations = Vec::new();
    let cols = ramified.lmax() + 1;
    for (idx, (&r, &s)) in ramified.entries().iter().zip(unramified.entries()).enumerate() {
        if s > 0.0 {
            let q = r / s;
            gamma_hat = Some(gamma_hat.map_or(q, |g| g.max(q)));
        } else if r > 0.0 {
            violations.push((idx / cols, idx % cols));
        }
    }
    Ok(TableComparison {
        gamma_hat,
        violations,
    })
}
