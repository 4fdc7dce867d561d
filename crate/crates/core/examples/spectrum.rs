//! Eigenvalues of the intertwining operator and their power-law decay.

use compseries::intertwining::{asymptotic_exponent, lambda_spectrum};

fn main() -> compseries::Result<()> {
    let (n, u) = (5, 0.4);
    let s = lambda_spectrum(n, u, 10_000)?;
    for m in [0, 1, 2, 5, 10, 100, 1000, 10_000] {
        println!("lambda_{m:<6} = {:.15e}", s.lambda(m).unwrap());
    }
    let p = asymptotic_exponent(&s, 1000, 10_000)?;
    println!("fitted exponent {p:.6}, predicted {:.6}", -f64::from(n - 1) * u);
    Ok(())
}
