//! Special functions: log-Gamma and Gamma ratios in log space, Stirling
//! exponents, exact half-integer Gamma values and Gegenbauer polynomials.

mod dd;
pub mod exact;
mod gamma;
mod gegenbauer;

pub use exact::{gamma_half_integer, pochhammer, SqrtPiMultiple};
pub use gamma::{gamma_ratio_log, gamma_ratio_log_shifted, log_gamma, stirling_ratio_exponent, LogGammaValue};
pub use gegenbauer::{gegenbauer, GegenbauerPoly};

pub(crate) use gamma::gamma_ratio_log_unchecked;
