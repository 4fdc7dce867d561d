//! End-to-end acceptance checks. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num::{BigRational, One, ToPrimitive, Zero};

use compseries::criterion::{evaluate_criterion, ramified_bound, CriterionReport, Verdict};
use compseries::harmonics::{
    associated_harmonic, branch_coeff_exact, branch_coeff_expanded, branch_coeff_fast,
    branching_identity_check, build_branch_table, sphere_moment, BranchTable, BuildMode, Poly,
    Sectoral,
};
use compseries::intertwining::{asymptotic_exponent, lambda_spectrum};
use compseries::params::{endpoint_map, window, ParamPoint, Rational};

type Check = Result<String, String>;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn branching_dimensions() -> Check {
    let t = Instant::now();
    for n in 3..=10 {
        ensure(branching_identity_check(n, 30), || format!("identity fails for n={n}"))?;
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n=3..10, m<=30 in {:?}", t.elapsed()))
}

fn harmonic_oracle() -> Check {
    let t = Instant::now();
    let mut slots = 0;
    for n in 3..=7 {
        for m in 0..=20 {
            for l in 0..=m {
                let f = associated_harmonic(n, m, l).map_err(|e| e.to_string())?;
                ensure(f.laplacian().is_zero(), || format!("nonzero Laplacian at n={n} m={m} l={l}"))?;
                let c = branch_coeff_exact(n, m, l).map_err(|e| e.to_string())?;
                ensure(c.is_zero() == ((m - l) % 2 == 1), || {
                    format!("parity vanishing fails at n={n} m={m} l={l}: C={c}")
                })?;
                slots += 1;
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{slots} slots in {:?}", t.elapsed()))
}

/// Sphere moments from `M(alpha) = (alpha_j - 1)/(n + |alpha| - 2) M(alpha - 2 e_j)`.
fn moment_by_recursion(n: u32, alpha: &[u32]) -> BigRational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return BigRational::zero();
    }
    let Some(j) = alpha.iter().position(|&a| a > 0) else {
        return BigRational::one();
    };
    let total: u32 = alpha.iter().sum();
    let mut lower = alpha.to_vec();
    lower[j] -= 2;
    q(i64::from(alpha[j]) - 1, i64::from(n + total) - 2) * moment_by_recursion(n, &lower)
}

fn mean_by_recursion(n: u32, p: &Poly) -> BigRational {
    p.terms()
        .iter()
        .map(|(alpha, c)| c * moment_by_recursion(n, alpha))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn closed_anchors() -> Check {
    for n in 3..=7u32 {
        let ni = i64::from(n);
        let get = |m, l| branch_coeff_exact(n, m, l).map_err(|e| e.to_string());
        ensure(get(0, 0)? == q(1, 1), || format!("C(0,0) != 1 for n={n}"))?;
        ensure(get(1, 1)? == q(ni, ni - 1), || format!("C(1,1) != n/(n-1) for n={n}"))?;
        let c20 = get(2, 0)?;
        ensure(c20 == q(ni + 2, 2 * ni - 2), || format!("C(2,0) = {c20} for n={n}"))?;
        // independent recomputation of the same ratio from the expanded witness
        let f = associated_harmonic(n, 2, 0).map_err(|e| e.to_string())?;
        let full = mean_by_recursion(n, &f.poly().square());
        let restricted = mean_by_recursion(n - 1, &f.restrict().square());
        ensure(restricted / full == c20, || format!("moment recursion disagrees for n={n}"))?;
        for alpha in f.poly().square().terms().keys() {
            ensure(sphere_moment(n, alpha) == moment_by_recursion(n, alpha), || {
                format!("moment mismatch at {alpha:?}, n={n}")
            })?;
        }
    }
    Ok("C(0,0)=1, C(1,1)=n/(n-1), C(2,0)=(n+2)/(2n-2) for n=3..7".into())
}

fn fast_exact_agreement() -> Check {
    let mut worst = 0.0f64;
    let mut slots = 0;
    for n in 3..=8 {
        for m in 0..=40 {
            for l in 0..=m {
                let fast = branch_coeff_fast(n, m, l).map_err(|e| e.to_string())?;
                let exact = branch_coeff_exact(n, m, l).map_err(|e| e.to_string())?;
                if (m - l) % 2 == 1 {
                    ensure(fast == 0.0 && exact.is_zero(), || format!("odd slot n={n} m={m} l={l}"))?;
                } else {
                    let e = exact.to_f64().ok_or("exact value not representable")?;
                    let rel = (fast / e - 1.0).abs();
                    worst = worst.max(rel);
                    ensure(rel <= 1e-10, || format!("rel err {rel:e} at n={n} m={m} l={l}"))?;
                }
                slots += 1;
            }
        }
    }
    Ok(format!("{slots} slots, max relative error {worst:.2e}"))
}

fn witness_independence() -> Check {
    let mut slots = 0;
    for n in 3..=6u32 {
        let mmax = if n <= 4 { 9 } else { 7 };
        for m in 1..=mmax {
            for l in 1..=m {
                let re = branch_coeff_expanded(n, m, l, Sectoral::Re).map_err(|e| e.to_string())?;
                let im = branch_coeff_expanded(n, m, l, Sectoral::Im).map_err(|e| e.to_string())?;
                ensure(re == im, || format!("Re/Im differ at n={n} m={m} l={l}: {re} vs {im}"))?;
                slots += 1;
            }
        }
    }
    Ok(format!("{slots} slots with l>=1 (n=3..6) agree exactly"))
}

fn spectrum_contracts() -> Check {
    let t = Instant::now();
    let mut worst_rec = 0.0f64;
    let mut worst_slope = 0.0f64;
    for n in 3..=6u32 {
        for &u in &[0.3, 0.5, 0.7] {
            let s = lambda_spectrum(n, u, 10_000).map_err(|e| e.to_string())?;
            ensure(s.lambda(0) == Some(1.0), || format!("lambda_0 != 1 for n={n} u={u}"))?;
            for m in 0..10_000 {
                let got = (s.log_values()[m + 1] - s.log_values()[m]).exp();
                let rel = (got / s.recurrence_ratio(m) - 1.0).abs();
                worst_rec = worst_rec.max(rel);
                ensure(rel <= 1e-12, || format!("recurrence off by {rel:e} at n={n} u={u} m={m}"))?;
            }
            let p = asymptotic_exponent(&s, 500, 5000).map_err(|e| e.to_string())?;
            let want = -f64::from(n - 1) * u;
            let rel = (p / want - 1.0).abs();
            worst_slope = worst_slope.max(rel);
            ensure(rel < 0.02, || format!("slope {p} vs {want} for n={n} u={u}"))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "recurrence max rel {worst_rec:.1e}, slope max rel {worst_slope:.1e}, {:?}",
        t.elapsed()
    ))
}

fn endpoint_identity() -> Check {
    let mut count = 0;
    for n in 3..=12u32 {
        for i in 0..n / 2 {
            let Ok(w) = window(n, i) else { continue };
            if w.is_empty() {
                continue;
            }
            let e = endpoint_map(n, i).map_err(|e| e.to_string())?;
            let (ni, ii) = (i64::from(n), i64::from(i));
            let end = Rational::from_integer(1) - Rational::new(2 * ii, ni - 1);
            let next = Rational::from_integer(1) - Rational::new(2 * ii, ni - 2);
            ensure(e.u_end_exact == end && e.u_end_next_exact == next, || {
                format!("endpoint identity fails at n={n} i={i}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (n, i) pairs with n<=12"))
}

fn run_case(n: u32, i: u32, u: f64, mmax: usize) -> Result<CriterionReport, String> {
    let table = build_branch_table(n, mmax, 40, BuildMode::Fast).map_err(|e| e.to_string())?;
    let p = ParamPoint::new(n, 0, u).map_err(|e| e.to_string())?;
    let r = evaluate_criterion(&table, &p, 40, mmax).map_err(|e| e.to_string())?;
    if i > 0 {
        let b = ramified_bound(&r, i, 1.0).map_err(|e| e.to_string())?;
        ensure(b == r.sup_bound, || "gamma=1 ramified bound differs from sup".into())?;
    }
    Ok(r)
}

fn in_window_verdicts() -> Check {
    let mut notes = Vec::new();
    for &(n, i, u) in &[(3, 0, 0.6), (4, 0, 0.6), (5, 0, 0.5), (5, 1, 0.3)] {
        let t = Instant::now();
        let a = run_case(n, i, u, 4000)?;
        let b = run_case(n, i, u, 8000)?;
        ensure(a.uniform_verdict == Verdict::Bounded, || format!("({n},{i},{u}) not bounded"))?;
        ensure(a.per_l.iter().all(|r| r.fitted_tail_exponent.is_some_and(|p| p < -1.0)), || {
            format!("({n},{i},{u}) has a fitted exponent >= -1")
        })?;
        let (sa, sb) = (a.sup_bound.ok_or("no sup")?, b.sup_bound.ok_or("no sup")?);
        let tail = a.per_l[a.argmax_l.ok_or("no argmax")?].tail_estimate.ok_or("no tail")?;
        ensure((sb - sa).abs() < tail, || {
            format!("({n},{i},{u}) doubling moved sup by {:e} >= tail {tail:e}", (sb - sa).abs())
        })?;
        within(t.elapsed(), Duration::from_secs(60))?;
        notes.push(format!("({n},{i},{u}) sup={sa:.6}"));
    }
    Ok(notes.join(", "))
}

fn normalization_independence() -> Check {
    let table = build_branch_table(4, 2000, 20, BuildMode::Fast).map_err(|e| e.to_string())?;
    let scaled = table.scaled(7.0).map_err(|e| e.to_string())?;
    let p = ParamPoint::new(4, 0, 0.6).map_err(|e| e.to_string())?;
    let a = evaluate_criterion(&table, &p, 20, 2000).map_err(|e| e.to_string())?;
    let b = evaluate_criterion(&scaled, &p, 20, 2000).map_err(|e| e.to_string())?;
    ensure(a.uniform_verdict == b.uniform_verdict, || "verdict changed".into())?;
    ensure(a.argmax_l == b.argmax_l, || "argmax changed".into())?;
    for (ra, rb) in a.per_l.iter().zip(&b.per_l) {
        let (pa, pb) = (ra.fitted_tail_exponent.unwrap(), rb.fitted_tail_exponent.unwrap());
        ensure((pa - pb).abs() <= 1e-12 * pa.abs(), || format!("exponent changed at l={}", ra.l))?;
    }
    let ratio = b.sup_bound.unwrap() / a.sup_bound.unwrap();
    ensure((ratio - 7.0).abs() <= 7e-12, || format!("sup ratio {ratio}"))?;
    Ok(format!("sup ratio 7{:+.1e}", ratio - 7.0))
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_compseries");
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(["criterion-check", "--n", "4", "--i", "0", "--u", "0.6", "--lmax", "20"])
            .args(["--mmax", "2000", "--format", "json", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status))?;
        Ok(out.stdout)
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(one == eight, || "JSON reports differ between 1 and 8 threads".into())?;

    let table = build_branch_table(5, 200, 50, BuildMode::Fast).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    table.write_csv(&mut buf, &[]).map_err(|e| e.to_string())?;
    let back = BranchTable::read_csv(buf.as_slice()).map_err(|e| e.to_string())?;
    let lossless = table
        .entries()
        .iter()
        .zip(back.entries())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    ensure(lossless && back == table, || "CSV round trip is lossy".into())?;
    Ok(format!("{} identical report bytes; {} cells round-trip", one.len(), table.entries().len()))
}

fn main() {
    let criteria: BTreeMap<u32, (&str, fn() -> Check)> = BTreeMap::from([
        (1, ("exact branching identities", branching_dimensions as fn() -> Check)),
        (2, ("exact harmonic oracle", harmonic_oracle)),
        (3, ("closed anchors", closed_anchors)),
        (4, ("fast/exact agreement", fast_exact_agreement)),
        (5, ("witness independence", witness_independence)),
        (6, ("spectrum contracts", spectrum_contracts)),
        (7, ("endpoint identity", endpoint_identity)),
        (8, ("criterion verdict in window", in_window_verdicts)),
        (9, ("normalization independence", normalization_independence)),
        (10, ("determinism", determinism)),
    ]);
    let mut failed = 0;
    for (k, (name, check)) in &criteria {
        match check() {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
