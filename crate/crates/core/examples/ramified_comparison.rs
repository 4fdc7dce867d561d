//! Transfer a spherical bound to a ramified K-type: estimate the comparison
//! constant between two tables, then scale the spherical supremum by it.

use compseries::criterion::{compare_tables, evaluate_criterion, ramified_bound};
use compseries::harmonics::{build_branch_table, BuildMode, Provenance};
use compseries::params::ParamPoint;

fn main() -> compseries::Result<()> {
    let (n, u, lmax, mmax) = (6, 0.35, 20, 1000);
    let spherical = build_branch_table(n, mmax, lmax, BuildMode::Fast)?;
    let report = evaluate_criterion(&spherical, &ParamPoint::new(n, 0, u)?, lmax, mmax)?;
    println!("spherical sup bound: {:?}", report.sup_bound);

    // Stand-in for a degree-1 table computed elsewhere.
    let ramified = spherical.scaled(1.75)?.with_labels(1, Provenance::ExternalFile);
    let cmp = compare_tables(&ramified, &spherical)?;
    println!("gamma_hat = {:?}, {} unmatched slots", cmp.gamma_hat, cmp.violations.len());

    if let Some(gamma) = cmp.gamma_hat {
        println!("degree-1 bound: {:?}", ramified_bound(&report, 1, gamma)?);
    }
    Ok(())
}
