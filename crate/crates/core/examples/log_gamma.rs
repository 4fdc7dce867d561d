//! Log-Gamma and Gamma ratios for large, nearby arguments.

use compseries::specfun::{gamma_ratio_log, gamma_ratio_log_shifted, log_gamma, stirling_ratio_exponent};

fn main() -> compseries::Result<()> {
    for x in [0.5, 1.0, 10.0, 100.5, 1e6] {
        let g = log_gamma(x)?;
        println!("ln Gamma({x}) = {:.17e} (+ {:.1e})", g.log_abs, g.tail);
    }
    // ln Gamma(m + a) - ln Gamma(m + b) without cancellation
    let (a, b) = (0.35, 1.9);
    for m in [10.0, 1e4, 1e8] {
        let r = gamma_ratio_log_shifted(m, a, b)?;
        println!(
            "m={m:e}: ratio {r:.15}, Stirling {:.15}",
            stirling_ratio_exponent(a, b) * f64::ln(m)
        );
    }
    println!("ln(Gamma(7)/Gamma(5)) = {}", gamma_ratio_log(7.0, 5.0)?);
    Ok(())
}
