//! p-local lattice linear algebra over `Z_(p)`.
//!
//! Only p-valuations drive pivoting: primes other than `p` are units. Entries
//! are exact rationals, so images of polynomial data under `u -> p` need no
//! clearing of denominators.

mod lattice;
mod matrix;
mod snf;

pub use lattice::{
    lattice_intersect, lattice_quotient, lattice_sum, saturate, scale_lattice, PLattice,
    QuotientInvariants,
};
pub use matrix::QMat;
pub use snf::{extend_to_basis, saturated_kernel, snf_p, solve_p_integral, SnfResult};
