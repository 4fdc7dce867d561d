//! Sweeps of the criterion toward the upper end of a window.

use serde::Serialize;

use super::{evaluate_criterion_with, CriterionReport, CriterionSettings};
use crate::error::{domain, Result};
use crate::harmonics::{build_branch_table, BranchTable, BuildMode};
use crate::params::{window, ParamPoint};

/// Smallest distance to the endpoint that a scan will visit.
pub const MIN_GAP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub u: f64,
    /// Distance from `u` to the upper end of the degree-`i` window.
    pub gap: f64,
    pub report: CriterionReport,
}

/// Gaps `g_0 > g_1 > ...` for a window of the given width: `g_0` is half
/// the width and consecutive gaps halve, unless that would go below
/// [`MIN_GAP`], in which case the ratio is stretched so the last gap is
/// exactly `MIN_GAP`.
pub fn endpoint_gaps(width: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return domain(format!("a scan needs at least 2 steps, got {steps}"));
    }
    let g0 = width / 2.0;
    if !(g0 > MIN_GAP) {
        return domain(format!("window width {width} is too narrow to scan"));
    }
    let last = (steps - 1) as f64;
    let ratio = f64::max(0.5, (MIN_GAP / g0).powf(1.0 / last));
    let mut gaps: Vec<f64> = (0..steps).map(|k| g0 * ratio.powi(k as i32)).collect();
    if ratio > 0.5 {
        gaps[steps - 1] = MIN_GAP;
    }
    Ok(gaps)
}

/// Evaluate the spherical criterion at points approaching the upper end of
/// the degree-`i` window `(1/(n-1), 1 - 2i/(n-1))`.
///
/// For `i >= 1` the reports are the `i = 0` series at those `u`, which
/// bound the degree-`i` series through [`super::ramified_bound`].
pub fn endpoint_scan(n: u32, i: u32, steps: usize, lmax: usize, mmax: usize) -> Result<Vec<ScanPoint>> {
    endpoint_scan_with(n, i, steps, lmax, mmax, &CriterionSettings::default())
}

pub fn endpoint_scan_with(
    n: u32,
    i: u32,
    steps: usize,
    lmax: usize,
    mmax: usize,
    settings: &CriterionSettings,
) -> Result<Vec<ScanPoint>> {
    let table = build_branch_table(n, mmax, lmax, BuildMode::Fast)?;
    endpoint_scan_with_table(&table, i, steps, lmax, mmax, settings)
}

/// [`endpoint_scan`] on a prebuilt spherical table, whose `n` is used.
pub fn endpoint_scan_with_table(
    table: &BranchTable,
    i: u32,
    steps: usize,
    lmax: usize,
    mmax: usize,
    settings: &CriterionSettings,
) -> Result<Vec<ScanPoint>> {
    let n = table.n();
    if table.i() != 0 {
        return domain("endpoint scans run on a spherical (i = 0) table");
    }
    let w = window(n, i)?;
    if w.is_empty() {
        return domain(format!("the window for n={n}, i={i} is empty"));
    }
    let gaps = endpoint_gaps(w.width(), steps)?;
    gaps.into_iter()
        .map(|gap| {
            let u = w.hi - gap;
            let p = ParamPoint::new(n, 0, u)?;
            let report = evaluate_criterion_with(table, &p, lmax, mmax, settings)?;
            Ok(ScanPoint { u, gap, report })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::Verdict;

    #[test]
    fn gap_sequences() {
        let g = endpoint_gaps(0.25, 5).unwrap();
        assert_eq!(g, vec![0.125, 0.0625, 0.03125, 0.015625, 0.0078125]);
        let g = endpoint_gaps(0.5, 40).unwrap();
        assert_eq!(g.len(), 40);
        assert_eq!(*g.last().unwrap(), MIN_GAP);
        assert!(g.windows(2).all(|w| w[1] < w[0]));
        assert!(endpoint_gaps(0.5, 1).is_err());
        assert!(endpoint_gaps(1e-4, 3).is_err());
    }

    #[test]
    fn sweep_toward_half() {
        let pts = endpoint_scan(5, 1, 5, 8, 400).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.windows(2).all(|w| w[0].u < w[1].u));
        assert!(pts.iter().all(|p| p.u < 0.5 && p.u > 0.25));
        let pts = endpoint_scan(3, 0, 2, 4, 400).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].u, 0.75);
        assert!(pts.iter().all(|p| p.report.uniform_verdict == Verdict::Bounded));
    }
}
