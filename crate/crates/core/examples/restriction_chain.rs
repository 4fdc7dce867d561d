//! Follow a complementary-series parameter down the restriction chain
//! SO(n,1) > SO(n-1,1) > ... and report where it stops.
//!
//! Run with `cargo run --example restriction_chain -- 9 1 0.7`.

use compseries::params::{endpoint_map, iterate_chain, window, ParamPoint};

fn main() -> compseries::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map_or(9, |s| s.parse().expect("n"));
    let i: u32 = args.get(1).map_or(1, |s| s.parse().expect("i"));
    let u: f64 = args.get(2).map_or(0.7, |s| s.parse().expect("u"));

    let w = window(n, i)?;
    println!("window for n={n}, i={i}: ({}, {})", w.lo, w.hi);
    let end = endpoint_map(n, i)?;
    println!("endpoint {} maps to {}", end.u_end_exact, end.u_end_next_exact);

    let trace = iterate_chain(&ParamPoint::new(n, i, u)?, 64);
    for p in trace.points() {
        println!("  n={:<3} u={:.12}", p.n, p.u);
    }
    println!("stopped: {:?} (tempered: {})", trace.stop, trace.terminated_tempered);
    Ok(())
}
