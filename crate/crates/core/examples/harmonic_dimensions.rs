//! Dimensions of spaces of spherical harmonics and the branching rule
//! `dim H^m(S^{n-1}) = sum_{l <= m} dim H^l(S^{n-2})`.

use compseries::harmonics::{branching_identity_check, dim_harmonics};

fn main() -> compseries::Result<()> {
    println!("{:>4} {}", "m", (3..=8).map(|n| format!("{:>10}", format!("n={n}"))).collect::<String>());
    for m in 0..=12 {
        let row: Vec<String> = (3..=8)
            .map(|n| dim_harmonics(n, m).map(|d| format!("{d:>10}")))
            .collect::<Result<_, _>>()?;
        println!("{m:>4} {}", row.concat());
    }
    for n in 3..=8 {
        println!("branching identity for n={n} up to m=40: {}", branching_identity_check(n, 40));
    }
    Ok(())
}
