//! Evaluate the boundedness criterion at one spherical parameter and
//! print the per-row report.

use compseries::criterion::evaluate_criterion;
use compseries::harmonics::{build_branch_table, BuildMode};
use compseries::params::ParamPoint;

fn main() -> compseries::Result<()> {
    let (n, u, lmax, mmax) = (4, 0.6, 20, 2000);
    let table = build_branch_table(n, mmax, lmax, BuildMode::Fast)?;
    let report = evaluate_criterion(&table, &ParamPoint::new(n, 0, u)?, lmax, mmax)?;
    print!("{}", report.to_text());
    println!("exit code the CLI would use: {}", report.uniform_verdict.exit_code());
    Ok(())
}
