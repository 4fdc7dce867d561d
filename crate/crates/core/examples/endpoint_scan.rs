//! Approach the top of the branching window and watch the supremum bound.

use compseries::criterion::endpoint_scan;

fn main() -> compseries::Result<()> {
    for (n, i) in [(3, 0), (5, 0), (5, 1)] {
        println!("n={n} i={i}");
        for p in endpoint_scan(n, i, 6, 10, 2000)? {
            println!(
                "  u={:.6} gap={:.1e} {:?} sup={:?}",
                p.u, p.gap, p.report.uniform_verdict, p.report.sup_bound
            );
        }
    }
    Ok(())
}
