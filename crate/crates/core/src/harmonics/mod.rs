//! K-type combinatorics and the branching coefficients `C(m, l, 0)`.
//!
//! The degree-`m` harmonics on `S^{n-1}` restrict to the equator `S^{n-2}`
//! (`x_n = 0`) as a multiplicity-free sum over degrees `l <= m`. Each slot
//! `(m, l)` has a witness harmonic, and `C(m, l, 0)` is the ratio of its
//! squared norm after restriction to its squared norm before, both against
//! probability measures.

mod coeff;
mod dims;
pub mod moments;
pub mod poly;
mod table;
mod witness;

pub use coeff::{branch_coeff_exact, branch_coeff_expanded, branch_coeff_fast};
pub use dims::{branching_identity_check, dim_harmonics};
pub use moments::{radial_moment, sphere_moment};
pub use poly::{Monomial, Poly};
pub use table::{
    build_branch_table, build_branch_table_with, fmt_sci, BranchTable, BuildMode, Provenance,
    TableJson, TableLimits,
};
pub use witness::{
    associated_harmonic, associated_harmonic_with, radial_coeffs, radial_power, sectoral,
    HarmonicPoly, Sectoral,
};
