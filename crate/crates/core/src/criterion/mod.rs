//! Boundedness of the weighted branching series
//!
//! ```text
//! S(l) = sum_{m >= l} C(m, l, i) * l^{(n-2)u'} / m^{(n-1)u}
//! ```
//!
//! uniformly in `l`. Each row is summed exactly up to a truncation `mmax`,
//! its tail is modelled by a power law fitted on the last decade of nonzero
//! terms, and the rows are combined into a sup bound and a verdict.
//!
//! Rows are independent and may be evaluated in parallel; every row is
//! summed in increasing `m` with compensated summation, so a report does
//! not depend on the number of threads.

mod compare;
mod fit;
mod scan;

pub use compare::{compare_tables, ramified_bound, TableComparison};
pub use fit::{loglog_slope, LineFit, NeumaierSum};
pub use scan::{endpoint_gaps, endpoint_scan, endpoint_scan_with, endpoint_scan_with_table, ScanPoint, MIN_GAP};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::harmonics::{BranchTable, Provenance};
use crate::params::{branch_param, ParamPoint};
use crate::specfun::stirling_ratio_exponent;

/// Overall classification of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Inconclusive,
    Diverging,
}

impl Verdict {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Bounded => 0,
            Verdict::Inconclusive => 2,
            Verdict::Diverging => 3,
        }
    }
}

/// Thresholds for the tail model and the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionSettings {
    /// Every fitted exponent must lie strictly below this for `bounded`.
    pub bounded_below: f64,
    /// A fitted exponent at or above this means `diverging`.
    pub diverging_at: f64,
    /// Minimum nonzero terms in a row's fit window.
    pub min_fit_points: usize,
    /// Largest log-log slope of the lower envelope of bounds over the last
    /// quartile of `l` that still counts as uniform.
    pub trend_max_slope: f64,
}

impl Default for CriterionSettings {
    fn default() -> Self {
        Self {
            bounded_below: -1.0,
            diverging_at: -0.9,
            min_fit_points: 10,
            trend_max_slope: 0.5,
        }
    }
}

/// Why a row is not `bounded` on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    /// Integrable fitted tail.
    Converging,
    /// Every term is zero; the row sums to zero with no tail.
    Zero,
    /// Fewer nonzero terms in the fit window than required.
    TooFewPoints,
    /// Exponent in `[bounded_below, diverging_at)`.
    Marginal,
    Diverging,
}

/// One row `l` of a report. `None` stands for an infinite or undefined
/// value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub l: usize,
    pub partial_sum: f64,
    pub tail_estimate: Option<f64>,
    pub fitted_tail_exponent: Option<f64>,
    pub bound: Option<f64>,
    pub nonzero_terms: usize,
    pub fit_points: usize,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub mmax: usize,
    pub lmax: usize,
}

/// The lower-envelope trend over the last quartile of rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendCheck {
    pub l_from: usize,
    pub slope: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub n: u32,
    pub i: u32,
    pub u: f64,
    pub u_prime: f64,
    pub table_provenance: Provenance,
    pub per_l: Vec<RowReport>,
    pub sup_bound: Option<f64>,
    pub argmax_l: Option<usize>,
    pub trend: TrendCheck,
    pub uniform_verdict: Verdict,
    pub truncation: Truncation,
    pub settings: CriterionSettings,
}

impl CriterionReport {
    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<f64>| v.map_or_else(|| "inf".to_string(), |v| format!("{v:.6e}"));
        let _ = writeln!(
            s,
            "n={} i={} u={} u'={} mmax={} lmax={}",
            self.n, self.i, self.u, self.u_prime, self.truncation.mmax, self.truncation.lmax
        );
        let _ = writeln!(s, "verdict: {:?}", self.uniform_verdict);
        let _ = writeln!(
            s,
            "sup bound: {} (at l={})",
            opt(self.sup_bound),
            self.argmax_l.map_or_else(|| "-".into(), |l| l.to_string())
        );
        let _ = writeln!(
            s,
            "trend over l>={}: slope {} ({})",
            self.trend.l_from,
            self.trend.slope.map_or_else(|| "n/a".into(), |v| format!("{v:.4}")),
            if self.trend.passed { "ok" } else { "growing" }
        );
        let _ = writeln!(s, "{:>5} {:>14} {:>14} {:>10} {:>14}", "l", "partial", "tail", "exponent", "bound");
        for r in &self.per_l {
            let _ = writeln!(
                s,
                "{:>5} {:>14.6e} {:>14} {:>10} {:>14}",
                r.l,
                r.partial_sum,
                opt(r.tail_estimate),
                r.fitted_tail_exponent.map_or_else(|| "-".into(), |p| format!("{p:.5}")),
                opt(r.bound)
            );
        }
        s
    }
}

/// Exponents `(e_m, e_l)` of the weight `l^{e_l} m^{e_m}`.
///
/// `e_m = -(n-1)u` is the Stirling exponent of the intertwining spectrum,
/// `Gamma(m + rho(1-u)) / Gamma(m + rho(1+u))` with `rho = (n-1)/2`; `e_l`
/// is the same identity one rank down at `u'`, with sign reversed.
pub fn weight_exponents(n: u32, u: f64, u_prime: f64) -> (f64, f64) {
    let rho = (f64::from(n) - 1.0) / 2.0;
    let rho_down = (f64::from(n) - 2.0) / 2.0;
    let e_m = stirling_ratio_exponent(rho * (1.0 - u), rho * (1.0 + u));
    let e_l = stirling_ratio_exponent(rho_down * (1.0 + u_prime), rho_down * (1.0 - u_prime));
    (e_m, e_l)
}

/// `C(m, l) l^{(n-2)u'} / m^{(n-1)u}`, with the `l` factor taken as 1 at
/// `l = 0`.
pub fn series_term(
    table: &BranchTable,
    n: u32,
    u: f64,
    u_prime: f64,
    m: usize,
    l: usize,
) -> Result<f64> {
    let c = table.get(m, l)?;
    if l > m {
        return domain(format!("series term needs m >= l, got m={m}, l={l}"));
    }
    if m == 0 {
        return domain("series terms start at m = 1");
    }
    let (e_m, e_l) = weight_exponents(n, u, u_prime);
    Ok(term_from(c, m, l, e_m, e_l))
}

fn term_from(c: f64, m: usize, l: usize, e_m: f64, e_l: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let mut log_t = c.ln() + e_m * (m as f64).ln();
    if l > 0 {
        log_t += e_l * (l as f64).ln();
    }
    log_t.exp()
}

/// Evaluate the criterion for a point in its branching window.
pub fn evaluate_criterion(
    table: &BranchTable,
    p: &ParamPoint,
    lmax: usize,
    mmax: usize,
) -> Result<CriterionReport> {
    evaluate_criterion_with(table, p, lmax, mmax, &CriterionSettings::default())
}

pub fn evaluate_criterion_with(
    table: &BranchTable,
    p: &ParamPoint,
    lmax: usize,
    mmax: usize,
    settings: &CriterionSettings,
) -> Result<CriterionReport> {
    let u_prime = branch_param(p)?;
    if table.n() != p.n || table.i() != p.i {
        return Err(Error::Shape(format!(
            "table is for (n={}, i={}) but the point has (n={}, i={})",
            table.n(),
            table.i(),
            p.n,
            p.i
        )));
    }
    if mmax < 4 * lmax {
        return domain(format!("mmax={mmax} must be at least 4 lmax = {}", 4 * lmax));
    }
    evaluate_series(table, p.n, p.i, p.u, u_prime, lmax, mmax, settings)
}

/// The series evaluation behind [`evaluate_criterion`], without the window
/// and shape preconditions. Useful for probing parameters outside the
/// window, where the verdict should come out `diverging`.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_series(
    table: &BranchTable,
    n: u32,
    i: u32,
    u: f64,
    u_prime: f64,
    lmax: usize,
    mmax: usize,
    settings: &CriterionSettings,
) -> Result<CriterionReport> {
    if mmax > table.mmax() || lmax > table.lmax() {
        return Err(Error::OutOfRange {
            m: mmax,
            l: lmax,
            mmax: table.mmax(),
            lmax: table.lmax(),
        });
    }
    if lmax > mmax {
        return domain(format!("lmax={lmax} exceeds mmax={mmax}"));
    }
    if !(u.is_finite() && u_prime.is_finite()) {
        return domain("u and u' must be finite");
    }
    let (e_m, e_l) = weight_exponents(n, u, u_prime);
    let per_l: Vec<RowReport> = (0..=lmax)
        .into_par_iter()
        .map(|l| evaluate_row(table, l, mmax, e_m, e_l, settings))
        .collect();

    let (sup, argmax) = match per_l.iter().find(|r| r.bound.is_none()) {
        Some(r) => (None, Some(r.l)),
        None => {
            let mut best: Option<(f64, usize)> = None;
            for r in &per_l {
                let b = r.bound.expect("all bounds finite here");
                if best.is_none_or(|(s, _)| b > s) {
                    best = Some((b, r.l));
                }
            }
            (best.map(|b| b.0), best.map(|b| b.1))
        }
    };
    let trend = trend_check(&per_l, settings);
    let uniform_verdict = verdict(&per_l, sup, &trend);
    Ok(CriterionReport {
        n,
        i,
        u,
        u_prime,
        table_provenance: table.provenance(),
        per_l,
        sup_bound: sup,
        argmax_l: argmax,
        trend,
        uniform_verdict,
        truncation: Truncation { mmax, lmax },
        settings: *settings,
    })
}

fn evaluate_row(
    table: &BranchTable,
    l: usize,
    mmax: usize,
    e_m: f64,
    e_l: f64,
    settings: &CriterionSettings,
) -> RowReport {
    let first = l.max(1);
    let fit_from = first.max(mmax.div_ceil(10));
    let mut sum = NeumaierSum::new();
    let mut nonzero = 0usize;
    let mut fit_pts = Vec::new();
    let mut fit_ms = Vec::new();
    for (m, c) in table.column(l).enumerate().take(mmax + 1).skip(first) {
        if c == 0.0 {
            continue;
        }
        let t = term_from(c, m, l, e_m, e_l);
        sum.add(t);
        nonzero += 1;
        if m >= fit_from && t > 0.0 {
            fit_pts.push(((m as f64).ln(), t.ln()));
            fit_ms.push(m);
        }
    }
    let partial_sum = sum.value();
    let mut row = RowReport {
        l,
        partial_sum,
        tail_estimate: None,
        fitted_tail_exponent: None,
        bound: None,
        nonzero_terms: nonzero,
        fit_points: fit_pts.len(),
        status: RowStatus::TooFewPoints,
    };
    if nonzero == 0 {
        row.tail_estimate = Some(0.0);
        row.bound = Some(0.0);
        row.status = RowStatus::Zero;
        return row;
    }
    if fit_pts.len() < settings.min_fit_points.max(2) {
        return row;
    }
    let Some(fit) = loglog_slope(&fit_pts) else {
        return row;
    };
    let p = fit.slope;
    row.fitted_tail_exponent = Some(p);
    if p >= settings.diverging_at {
        row.status = RowStatus::Diverging;
        return row;
    }
    if p >= settings.bounded_below {
        row.status = RowStatus::Marginal;
        return row;
    }
    // Nonzero terms sit on a lattice of spacing `gap`; the tail sum past the
    // last one is approximated by the integral from half a gap beyond it.
    let (m_first, m_last) = (fit_ms[0] as f64, fit_ms[fit_ms.len() - 1] as f64);
    let gap = (m_last - m_first) / (fit_ms.len() - 1) as f64;
    let start = m_last + gap / 2.0;
    let tail = (fit.intercept + (p + 1.0) * start.ln()).exp() / (gap * (-p - 1.0));
    row.tail_estimate = Some(tail);
    row.bound = Some(partial_sum + tail);
    row.status = RowStatus::Converging;
    row
}

fn trend_check(rows: &[RowReport], settings: &CriterionSettings) -> TrendCheck {
    let lmax = rows.last().map_or(0, |r| r.l);
    let l_from = (lmax - lmax / 4).max(1);
    let tail_rows: Vec<&RowReport> = rows.iter().filter(|r| r.l >= l_from).collect();
    let mut check = TrendCheck {
        l_from,
        slope: None,
        passed: true,
    };
    if tail_rows.len() < 3 || tail_rows.iter().any(|r| !matches!(r.bound, Some(b) if b > 0.0)) {
        return check;
    }
    let mut envelope = vec![0.0; tail_rows.len()];
    let mut running = f64::INFINITY;
    for (k, r) in tail_rows.iter().enumerate().rev() {
        running = running.min(r.bound.expect("checked above"));
        envelope[k] = running;
    }
    let pts: Vec<(f64, f64)> = tail_rows
        .iter()
        .zip(&envelope)
        .map(|(r, e)| ((r.l as f64).ln(), e.ln()))
        .collect();
    if let Some(fit) = loglog_slope(&pts) {
        check.slope = Some(fit.slope);
        check.passed = fit.slope <= settings.trend_max_slope;
    }
    check
}

fn verdict(rows: &[RowReport], sup: Option<f64>, trend: &TrendCheck) -> Verdict {
    if rows.iter().any(|r| r.status == RowStatus::Diverging) {
        return Verdict::Diverging;
    }
    let all_ok = rows
        .iter()
        .all(|r| matches!(r.status, RowStatus::Converging | RowStatus::Zero));
    if all_ok && sup.is_some_and(f64::is_finite) && trend.passed {
        Verdict::Bounded
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{build_branch_table, BuildMode};
    use num::rational::Ratio;

    fn point(n: u32, u: f64) -> ParamPoint {
        ParamPoint::new(n, 0, u).unwrap()
    }

    #[test]
    fn weight_exponents_match_spectrum_exponents() {
        // rho(1-u) - rho(1+u) = -(n-1)u, and one rank down with the sign flipped
        for n in 3..12i64 {
            for (p, q) in [(1, 2), (3, 5), (7, 10)] {
                let u = Ratio::new(p, q);
                let one = Ratio::from_integer(1);
                let rho = Ratio::new(n - 1, 2);
                let e = stirling_ratio_exponent(rho * (one - u), rho * (one + u));
                assert_eq!(e, -u * (n - 1));
                let rho_down = Ratio::new(n - 2, 2);
                let e = stirling_ratio_exponent(rho_down * (one + u), rho_down * (one - u));
                assert_eq!(e, u * (n - 2));
            }
        }
        let (e_m, e_l) = weight_exponents(4, 0.6, 0.4);
        assert!((e_m + 1.8).abs() < 1e-15 && (e_l - 0.8).abs() < 1e-15);
    }

    #[test]
    fn term_examples() {
        let t = build_branch_table(4, 12, 4, BuildMode::Exact).unwrap();
        assert_eq!(series_term(&t, 4, 0.6, 0.4, 3, 0).unwrap(), 0.0);
        let v = series_term(&t, 4, 0.6, 0.4, 1, 1).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
        let c = t.get(10, 2).unwrap();
        let want = c * 2f64.powf(0.8) / 10f64.powf(1.8);
        assert!((series_term(&t, 4, 0.6, 0.4, 10, 2).unwrap() / want - 1.0).abs() < 1e-14);
        assert!(series_term(&t, 4, 0.6, 0.4, 13, 0).is_err());
        assert!(series_term(&t, 4, 0.6, 0.4, 0, 0).is_err());
    }

    #[test]
    fn in_window_point_is_bounded() {
        let t = build_branch_table(4, 2000, 20, BuildMode::Fast).unwrap();
        let r = evaluate_criterion(&t, &point(4, 0.6), 20, 2000).unwrap();
        assert_eq!(r.uniform_verdict, Verdict::Bounded);
        assert_eq!(r.per_l.len(), 21);
        for row in &r.per_l {
            assert!(row.partial_sum >= 0.0);
            assert!(row.fitted_tail_exponent.unwrap() < -1.0);
        }
        let sup = r.sup_bound.unwrap();
        let max = r.per_l.iter().map(|row| row.bound.unwrap()).fold(0.0, f64::max);
        assert_eq!(sup, max);
        assert_eq!(r.per_l[r.argmax_l.unwrap()].bound, Some(sup));
    }

    #[test]
    fn single_row() {
        let t = build_branch_table(5, 400, 0, BuildMode::Fast).unwrap();
        let r = evaluate_criterion(&t, &point(5, 0.5), 0, 400).unwrap();
        assert_eq!(r.per_l.len(), 1);
        let want: f64 = (1..=400)
            .map(|m| t.get(m, 0).unwrap() / (m as f64).powf(2.0))
            .sum();
        assert!((r.per_l[0].partial_sum / want - 1.0).abs() < 1e-12);
        assert_eq!(r.trend.slope, None);
    }

    #[test]
    fn zero_table() {
        let t = BranchTable::from_entries(4, 0, 100, 5, vec![0.0; 101 * 6], Provenance::ExternalFile)
            .unwrap();
        let r = evaluate_criterion(&t, &point(4, 0.6), 5, 100).unwrap();
        assert!(r.per_l.iter().all(|row| row.partial_sum == 0.0));
        assert_eq!(r.uniform_verdict, Verdict::Bounded);
        assert_eq!(r.sup_bound, Some(0.0));
    }

    #[test]
    fn out_of_window_diverges() {
        // u = 0.2 < 1/(n-1) for n = 4: the m-weight decays too slowly
        let t = build_branch_table(4, 2000, 10, BuildMode::Fast).unwrap();
        let (u, up) = (0.2, (3.0 * 0.2 - 1.0) / 2.0);
        let r = evaluate_series(&t, 4, 0, u, up, 10, 2000, &CriterionSettings::default()).unwrap();
        assert_eq!(r.uniform_verdict, Verdict::Diverging);
        assert_eq!(r.sup_bound, None);
        assert!(evaluate_criterion(&t, &point(4, 0.2), 10, 2000).is_err());
    }

    #[test]
    fn preconditions() {
        let t = build_branch_table(4, 100, 10, BuildMode::Fast).unwrap();
        assert!(evaluate_criterion(&t, &point(4, 0.6), 30, 100).is_err());
        assert!(evaluate_criterion(&t, &point(4, 0.6), 10, 200).is_err());
        assert!(evaluate_criterion(&t, &point(5, 0.6), 10, 100).is_err());
        // too short a fit window for the tail model
        let r = evaluate_criterion(&t, &point(4, 0.6), 2, 8).unwrap();
        assert_eq!(r.uniform_verdict, Verdict::Inconclusive);
    }

    #[test]
    fn text_summary_mentions_verdict() {
        let t = build_branch_table(3, 400, 4, BuildMode::Fast).unwrap();
        let r = evaluate_criterion(&t, &point(3, 0.7), 4, 400).unwrap();
        let text = r.to_text();
        assert!(text.contains("verdict: Bounded"));
        assert_eq!(text.lines().count(), 5 + 5);
    }
}
