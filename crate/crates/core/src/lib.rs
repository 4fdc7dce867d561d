//! Numerical and exact tools for restricting complementary series
//! representations of `SO(n,1)` to `SO(n-1,1)`.
//!
//! The crate is organized around one question: for a parameter `u` in the
//! branching window, is the weighted series
//! `sum_m C(m, l) l^{(n-2)u'} / m^{(n-1)u}` bounded uniformly in `l`?
//!
//! - [`params`]: windows, the branching map `u -> u'`, restriction chains.
//! - [`specfun`]: log-Gamma in double-double precision, Gamma ratios,
//!   exact Gegenbauer polynomials.
//! - [`harmonics`]: dimensions, sphere moments, exact and fast branching
//!   coefficients, table I/O.
//! - [`intertwining`]: eigenvalues of the intertwining operator.
//! - [`criterion`]: tail fits, per-row bounds, verdicts, endpoint scans and
//!   the comparison with ramified tables.
//! - [`cli`]: the `compseries` command-line front end.
//!
//! # Examples
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example restriction_chain -- 9 1 0.7
//! cargo run --example harmonic_dimensions
//! cargo run --example exact_coefficients
//! cargo run --release --example fast_table -- 5 2000 50 table.csv
//! cargo run --example spectrum
//! cargo run --example criterion_check
//! cargo run --example ramified_comparison
//! cargo run --example endpoint_scan
//! cargo run --example log_gamma
//! ```

pub mod cli;
pub mod criterion;
pub mod error;
pub mod harmonics;
pub mod intertwining;
pub mod params;
pub mod specfun;

pub use error::{Error, Result};
