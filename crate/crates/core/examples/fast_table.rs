//! Build a large floating-point table of branching coefficients in
//! parallel and save it as CSV.
//!
//! `cargo run --release --example fast_table -- 5 2000 50 table.csv`

use std::fs::File;
use std::io::BufWriter;
use std::time::Instant;

use compseries::harmonics::{build_branch_table, BuildMode};

fn main() -> compseries::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map_or(5, |s| s.parse().expect("n"));
    let mmax: usize = args.get(1).map_or(2000, |s| s.parse().expect("mmax"));
    let lmax: usize = args.get(2).map_or(50, |s| s.parse().expect("lmax"));

    let start = Instant::now();
    let table = build_branch_table(n, mmax, lmax, BuildMode::Fast)?;
    println!("{} built in {:.2?}", table.header_line(), start.elapsed());
    for &(m, l) in &[(10, 2), (100, 10), (mmax, lmax)] {
        println!("  C({m}, {l}) = {:e}", table.get(m, l)?);
    }
    if let Some(path) = args.get(3) {
        let mut w = BufWriter::new(File::create(path)?);
        table.write_csv(&mut w, &[])?;
        println!("written to {path}");
    }
    Ok(())
}
