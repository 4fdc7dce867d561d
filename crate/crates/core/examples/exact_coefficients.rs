//! Exact branching coefficients `C(m, l)` as rationals, together with the
//! explicit harmonic polynomial that realizes one of them.

use compseries::harmonics::{associated_harmonic, branch_coeff_exact};

fn main() -> compseries::Result<()> {
    let n = 4;
    println!("C(m, l) for n = {n}:");
    for m in 0..=6 {
        let row: Vec<String> = (0..=m)
            .map(|l| branch_coeff_exact(n, m, l).map(|c| format!("{c:>10}")))
            .collect::<Result<_, _>>()?;
        println!("  m={m}: {}", row.join(" "));
    }

    let f = associated_harmonic(3, 2, 0)?;
    println!("\nharmonic of degree 2 on S^2 with zonal restriction:");
    for (exps, coef) in f.poly().terms() {
        println!("  {coef:>5} * x^{exps:?}");
    }
    println!("laplacian vanishes: {}", f.laplacian().is_zero());
    println!("norm^2 on the sphere: {}", f.norm_sq());
    Ok(())
}
