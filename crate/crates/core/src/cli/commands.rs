//! Command implementations. Each returns the rendered artifact.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::args::*;
use super::{exit, merge_config, required, without_nulls, Outcome};
use crate::criterion::{
    compare_tables, endpoint_scan_with_table, evaluate_criterion_with, ramified_bound,
    CriterionReport, CriterionSettings, Verdict,
};
use crate::error::{Error, Result};
use crate::harmonics::{
    branch_coeff_exact, branch_coeff_fast, build_branch_table_with, fmt_sci, BranchTable,
    BuildMode, Provenance, TableLimits,
};
use crate::intertwining::lambda_spectrum;
use crate::params::{branch_param, endpoint_map, iterate_chain, window, window_exact, ParamPoint};

struct Ctx<'a> {
    global: &'a GlobalArgs,
    config: Option<Value>,
}

impl Ctx<'_> {
    fn args<T>(&self, flags: &T) -> Result<T>
    where
        T: Serialize + serde::de::DeserializeOwned + Default,
    {
        merge_config(flags, self.config.as_ref())
    }

    fn limits(&self) -> TableLimits {
        TableLimits {
            exact_mmax_cap: self.global.exact_cap,
            max_cells: self.global.max_cells,
        }
    }

    /// Configuration echo: everything that determines the artifact, and
    /// nothing that does not (thread count, output path).
    fn echo<T: Serialize>(&self, command: &str, args: &T, format: Format) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert(
            "params".into(),
            without_nulls(serde_json::to_value(args).expect("arguments serialize")),
        );
        m.insert("format".into(), json!(format));
        m.insert("exact-cap".into(), json!(self.global.exact_cap));
        m.insert("max-cells".into(), json!(self.global.max_cells));
        if !self.global.deterministic {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            m.insert("timestamp".into(), json!(secs));
        }
        Value::Object(m)
    }

    fn format(&self, default: Format) -> Format {
        self.global.format.unwrap_or(default)
    }
}

/// JSON artifact: the body object with the config echo in front.
fn json_artifact(config: Value, body: Value) -> String {
    let mut m = Map::new();
    m.insert("config".into(), config);
    if let Value::Object(b) = body {
        m.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("values serialize");
    s.push('\n');
    s
}

fn config_comment(config: &Value) -> String {
    format!("# config {config}\n")
}

fn ok(artifact: String) -> Outcome {
    Outcome {
        artifact,
        status: exit::OK,
    }
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Outcome> {
    let config = match &cli.global.config {
        Some(path) => Some(serde_json::from_str(&read_text(path)?)?),
        None => None,
    };
    let ctx = Ctx {
        global: &cli.global,
        config,
    };
    match &cli.command {
        Command::Params(ParamsCommand::Window(a)) | Command::ParamsWindow(a) => params_window(&ctx, a),
        Command::Params(ParamsCommand::Map(a)) | Command::ParamsMap(a) => params_map(&ctx, a),
        Command::Params(ParamsCommand::Chain(a)) | Command::ParamsChain(a) => params_chain(&ctx, a),
        Command::Params(ParamsCommand::Endpoint(a)) | Command::ParamsEndpoint(a) => {
            params_endpoint(&ctx, a)
        }
        Command::BranchTable(a) => branch_table(&ctx, a),
        Command::BranchVerify(a) => branch_verify(&ctx, a),
        Command::Spectrum(a) => spectrum(&ctx, a),
        Command::Criterion(CriterionCommand::Check(a)) | Command::CriterionCheck(a) => {
            criterion_check(&ctx, a)
        }
        Command::Criterion(CriterionCommand::Scan(a)) | Command::CriterionScan(a) => {
            criterion_scan(&ctx, a)
        }
        Command::CompareTables(a) => compare(&ctx, a),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_table(path: &Path) -> Result<BranchTable> {
    let t = BranchTable::read_any(&read_text(path)?)?;
    let i = t.i();
    Ok(t.with_labels(i, Provenance::ExternalFile))
}

fn params_window(ctx: &Ctx, flags: &WindowArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let i = a.i.unwrap_or(0);
    let w = window(n, i)?;
    let (lo, hi) = window_exact(n, i)?;
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("params-window", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(
            cfg,
            json!({"n": n, "i": i, "lo": w.lo, "hi": w.hi,
                   "lo_exact": lo.to_string(), "hi_exact": hi.to_string(), "empty": w.is_empty()}),
        ),
        Format::Csv => format!(
            "{}n,i,lo,hi,empty\n{n},{i},{},{},{}\n",
            config_comment(&cfg),
            fmt_sci(w.lo),
            fmt_sci(w.hi),
            w.is_empty()
        ),
        Format::Text => format!(
            "window(n={n}, i={i}) = ({lo}, {hi}) = ({}, {}){}\n",
            w.lo,
            w.hi,
            if w.is_empty() { " [empty]" } else { "" }
        ),
    }))
}

fn params_map(ctx: &Ctx, flags: &PointArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let p = ParamPoint::new(required(a.n, "n")?, a.i.unwrap_or(0), required(a.u, "u")?)?;
    let up = branch_param(&p)?;
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("params-map", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(cfg, json!({"n": p.n, "i": p.i, "u": p.u, "u_prime": up})),
        Format::Csv => format!(
            "{}n,i,u,u_prime\n{},{},{},{}\n",
            config_comment(&cfg),
            p.n,
            p.i,
            fmt_sci(p.u),
            fmt_sci(up)
        ),
        Format::Text => format!("u' = {up}\n"),
    }))
}

fn params_chain(ctx: &Ctx, flags: &ChainArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let p = ParamPoint::new(required(a.n, "n")?, a.i.unwrap_or(0), required(a.u, "u")?)?;
    let trace = iterate_chain(&p, a.max_steps.unwrap_or(64));
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("params-chain", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(cfg, json!({ "trace": trace })),
        Format::Csv => {
            let mut s = config_comment(&cfg);
            s.push_str("step,n,i,u\n");
            for (k, q) in trace.points().enumerate() {
                let _ = writeln!(s, "{k},{},{},{}", q.n, q.i, fmt_sci(q.u));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (k, q) in trace.points().enumerate() {
                let _ = writeln!(s, "{k:>3}  n={:<3} i={}  u={}", q.n, q.i, q.u);
            }
            let _ = writeln!(
                s,
                "stop: {:?}; tempered: {}; terminal n: {}",
                trace.stop,
                trace.terminated_tempered,
                trace.terminal_m.map_or_else(|| "-".into(), |m| m.to_string())
            );
            s
        }
    }))
}

fn params_endpoint(ctx: &Ctx, flags: &WindowArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let i = a.i.unwrap_or(0);
    let e = endpoint_map(n, i)?;
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("params-endpoint", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(cfg, json!({ "n": n, "i": i, "endpoint": e })),
        Format::Csv => format!(
            "{}n,i,u_end,u_end_next,u_end_exact,u_end_next_exact\n{n},{i},{},{},{},{}\n",
            config_comment(&cfg),
            fmt_sci(e.u_end),
            fmt_sci(e.u_end_next),
            e.u_end_exact,
            e.u_end_next_exact
        ),
        Format::Text => format!(
            "u_end = {} ({}); image = {} ({})\n",
            e.u_end_exact, e.u_end, e.u_end_next_exact, e.u_end_next
        ),
    }))
}

fn branch_table(ctx: &Ctx, flags: &TableArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let mmax = required(a.mmax, "mmax")?;
    let lmax = a.lmax.unwrap_or(mmax);
    let mode = a.mode.unwrap_or(BuildMode::Fast);
    let t = build_branch_table_with(n, mmax, lmax, mode, &ctx.limits())?;
    let fmt = ctx.format(Format::Csv);
    let cfg = ctx.echo("branch-table", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(cfg, serde_json::to_value(t.to_json())?),
        Format::Csv | Format::Text => {
            let mut buf = Vec::new();
            t.write_csv(&mut buf, &[format!("config {cfg}")])?;
            String::from_utf8(buf).expect("CSV is ASCII")
        }
    }))
}

#[derive(Debug, Serialize)]
struct Mismatch {
    m: u32,
    l: u32,
    exact: f64,
    fast: f64,
    rel_err: f64,
}

fn branch_verify(ctx: &Ctx, flags: &VerifyArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let mmax = required(a.mmax, "mmax")?;
    let tol = a.tol.unwrap_or(1e-10);
    if !(tol >= 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be nonnegative")));
    }
    if mmax > ctx.global.exact_cap {
        return Err(Error::Resource(format!(
            "exact verification supports mmax <= {}, requested {mmax}",
            ctx.global.exact_cap
        )));
    }
    let mmax = u32::try_from(mmax).map_err(|_| Error::Domain("mmax too large".into()))?;
    let rows: Vec<Vec<(u32, u32, f64, f64)>> = (0..=mmax)
        .into_par_iter()
        .map(|m| {
            (0..=m)
                .map(|l| {
                    let exact = branch_coeff_exact(n, m, l).map(|q| {
                        num::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN)
                    })?;
                    Ok((m, l, exact, branch_coeff_fast(n, m, l)?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut slots = 0usize;
    let mut max_rel = 0.0f64;
    let mut mismatches = Vec::new();
    for (m, l, exact, fast) in rows.into_iter().flatten() {
        slots += 1;
        let rel = if exact == 0.0 {
            if fast == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            (fast / exact - 1.0).abs()
        };
        max_rel = max_rel.max(rel);
        if !(rel <= tol) {
            mismatches.push(Mismatch {
                m,
                l,
                exact,
                fast,
                rel_err: rel,
            });
        }
    }
    let passed = mismatches.is_empty();
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("branch-verify", &a, fmt);
    let artifact = match fmt {
        Format::Json => json_artifact(
            cfg,
            json!({"n": n, "mmax": mmax, "tol": tol, "slots": slots,
                   "max_rel_err": if max_rel.is_finite() { Some(max_rel) } else { None },
                   "passed": passed, "mismatches": mismatches}),
        ),
        Format::Csv => {
            let mut s = config_comment(&cfg);
            s.push_str("m,l,exact,fast,rel_err\n");
            for x in &mismatches {
                let _ = writeln!(s, "{},{},{},{},{}", x.m, x.l, fmt_sci(x.exact), fmt_sci(x.fast), fmt_sci(x.rel_err));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} slots checked for n={n}, m<={mmax}; max relative error {max_rel:.3e}; {}\n",
                slots,
                if passed { "all within tolerance" } else { "MISMATCH" }
            );
            for x in &mismatches {
                let _ = writeln!(s, "  (m={}, l={}): exact {:e}, fast {:e}", x.m, x.l, x.exact, x.fast);
            }
            s
        }
    };
    Ok(Outcome {
        artifact,
        status: if passed { exit::OK } else { exit::MISMATCH },
    })
}

fn spectrum(ctx: &Ctx, flags: &SpectrumArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let u = required(a.u, "u")?;
    let mmax = required(a.mmax, "mmax")?;
    if mmax >= ctx.global.max_cells {
        return Err(Error::Resource(format!(
            "{} values exceed the cap of {}",
            mmax + 1,
            ctx.global.max_cells
        )));
    }
    let s = lambda_spectrum(n, u, mmax)?;
    let fmt = ctx.format(Format::Csv);
    let cfg = ctx.echo("spectrum", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => {
            let lambda: Vec<f64> = s.log_values().iter().map(|v| v.exp()).collect();
            json_artifact(
                cfg,
                json!({"n": n, "u": u, "mmax": mmax, "lambda": lambda, "log_lambda": s.log_values()}),
            )
        }
        Format::Csv | Format::Text => {
            let mut out = config_comment(&cfg);
            out.push_str("m,lambda,log_lambda\n");
            for (m, lv) in s.log_values().iter().enumerate() {
                let _ = writeln!(out, "{m},{},{}", fmt_sci(lv.exp()), fmt_sci(*lv));
            }
            out
        }
    }))
}

fn settings(t: &ThresholdArgs) -> CriterionSettings {
    let d = CriterionSettings::default();
    CriterionSettings {
        bounded_below: t.bounded_below.unwrap_or(d.bounded_below),
        diverging_at: t.diverging_at.unwrap_or(d.diverging_at),
        min_fit_points: t.min_fit_points.unwrap_or(d.min_fit_points),
        trend_max_slope: t.trend_max_slope.unwrap_or(d.trend_max_slope),
    }
}

#[derive(Debug, Serialize)]
struct Ramified {
    i: u32,
    gamma: f64,
    bound: Option<f64>,
}

fn criterion_csv(report: &CriterionReport) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "inf".to_string(), fmt_sci);
    let mut s = String::from("l,partial_sum,tail_estimate,fitted_tail_exponent,bound,status\n");
    for r in &report.per_l {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.l,
            fmt_sci(r.partial_sum),
            opt(r.tail_estimate),
            r.fitted_tail_exponent.map_or_else(String::new, fmt_sci),
            opt(r.bound),
            serde_json::to_value(r.status).expect("status serializes").as_str().unwrap_or("")
        );
    }
    s
}

fn criterion_check(ctx: &Ctx, flags: &CheckArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let i = a.i.unwrap_or(0);
    let u = required(a.u, "u")?;
    let lmax = required(a.lmax, "lmax")?;
    let mmax = required(a.mmax, "mmax")?;
    let s = settings(&a.thresholds);
    let (report, ramified) = match &a.table {
        Some(path) => {
            if a.gamma.is_some() {
                return Err(Error::Usage("--gamma applies only without --table".into()));
            }
            let table = read_table(path)?;
            let p = ParamPoint::new(n, i, u)?;
            (evaluate_criterion_with(&table, &p, lmax, mmax, &s)?, None)
        }
        None => {
            let table = build_branch_table_with(n, mmax, lmax, BuildMode::Fast, &ctx.limits())?;
            let p = ParamPoint::new(n, 0, u)?;
            let report = evaluate_criterion_with(&table, &p, lmax, mmax, &s)?;
            let ramified = if i > 0 {
                let gamma = a.gamma.unwrap_or(1.0);
                let bound = ramified_bound(&report, i, gamma)?;
                Some(Ramified { i, gamma, bound })
            } else {
                if a.gamma.is_some() {
                    return Err(Error::Usage("--gamma applies only to i >= 1".into()));
                }
                None
            };
            (report, ramified)
        }
    };
    let status = report.uniform_verdict.exit_code();
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("criterion-check", &a, fmt);
    let artifact = match fmt {
        Format::Json => json_artifact(cfg, json!({ "report": report, "ramified": ramified })),
        Format::Csv => {
            let mut s = config_comment(&cfg);
            if let Some(r) = &ramified {
                let _ = writeln!(s, "# ramified i={} gamma={} bound={}", r.i, r.gamma,
                    r.bound.map_or_else(|| "inf".into(), fmt_sci));
            }
            s + &criterion_csv(&report)
        }
        Format::Text => {
            let mut s = report.to_text();
            if let Some(r) = &ramified {
                let _ = writeln!(
                    s,
                    "degree-{} bound with gamma={}: {}",
                    r.i,
                    r.gamma,
                    r.bound.map_or_else(|| "inf".into(), |b| format!("{b:.6e}"))
                );
            }
            s
        }
    };
    Ok(Outcome { artifact, status })
}

fn criterion_scan(ctx: &Ctx, flags: &ScanArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let n = required(a.n, "n")?;
    let i = a.i.unwrap_or(0);
    let steps = a.steps.unwrap_or(8);
    let lmax = required(a.lmax, "lmax")?;
    let mmax = required(a.mmax, "mmax")?;
    let table = build_branch_table_with(n, mmax, lmax, BuildMode::Fast, &ctx.limits())?;
    let points = endpoint_scan_with_table(&table, i, steps, lmax, mmax, &settings(&a.thresholds))?;
    let worst = points
        .iter()
        .map(|p| p.report.uniform_verdict)
        .max_by_key(|v| v.exit_code())
        .unwrap_or(Verdict::Bounded);
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("criterion-scan", &a, fmt);
    let artifact = match fmt {
        Format::Json => json_artifact(cfg, json!({ "n": n, "i": i, "points": points })),
        Format::Csv | Format::Text => {
            let mut s = if fmt == Format::Csv { config_comment(&cfg) } else { String::new() };
            s.push_str("u,gap,verdict,sup_bound,argmax_l\n");
            for p in &points {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    fmt_sci(p.u),
                    fmt_sci(p.gap),
                    serde_json::to_value(p.report.uniform_verdict)?.as_str().unwrap_or(""),
                    p.report.sup_bound.map_or_else(|| "inf".into(), fmt_sci),
                    p.report.argmax_l.map_or_else(String::new, |l| l.to_string())
                );
            }
            s
        }
    };
    Ok(Outcome {
        artifact,
        status: worst.exit_code(),
    })
}

fn compare(ctx: &Ctx, flags: &CompareArgs) -> Result<Outcome> {
    let a = ctx.args(flags)?;
    let ramified = read_table(&required(a.ramified.clone(), "ramified")?)?;
    let unramified = match &a.unramified {
        Some(p) => read_table(p)?,
        None => build_branch_table_with(
            ramified.n(),
            ramified.mmax(),
            ramified.lmax(),
            BuildMode::Fast,
            &ctx.limits(),
        )?,
    };
    let c = compare_tables(&ramified, &unramified)?;
    let fmt = ctx.format(Format::Text);
    let cfg = ctx.echo("compare-tables", &a, fmt);
    Ok(ok(match fmt {
        Format::Json => json_artifact(cfg, serde_json::to_value(&c)?),
        Format::Csv => {
            let mut s = config_comment(&cfg);
            let _ = writeln!(s, "# gamma_hat={}", c.gamma_hat.map_or_else(|| "none".into(), fmt_sci));
            s.push_str("m,l\n");
            for (m, l) in &c.violations {
                let _ = writeln!(s, "{m},{l}");
            }
            s
        }
        Format::Text => format!(
            "n={} i={} mmax={} lmax={}: gamma_hat = {}; {} slot(s) with no spherical counterpart\n",
            ramified.n(),
            ramified.i(),
            ramified.mmax(),
            ramified.lmax(),
            c.gamma_hat.map_or_else(|| "none".into(), |g| format!("{g:.17e}")),
            c.violations.len()
        ),
    }))
}
