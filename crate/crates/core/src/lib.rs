//! Exact computation of Nygaard filtrations on Breuil–Kisin modules over
//! `Z_p[[u]]` with Eisenstein polynomial `E = u - p`, and of the p-torsion in
//! the graded pieces of the induced integral filtration on `M = ev_p(M*)`.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`); file
//! formats, the command line and the randomized search live in `nygaard-cli`.
//!
//! Module map:
//! - [`exactring`]: polynomials in `u` with p-integral rational coefficients,
//!   E-adic expansion and exact division by powers of `E`.
//! - [`plattice`]: p-local lattices in `Q^d`, Smith form over `Z_(p)`,
//!   saturated kernels, quotients and intersections.
//! - [`bkcore`]: Breuil–Kisin modules, the iterative filtration, the brute
//!   force oracle and equality of free submodules.
//! - [`analysis`]: graded torsion, Hodge–Tate weights, the torsion-index
//!   monitor, Gee–Kisin invariants and adapted bases.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod bkcore;
mod error;
pub mod exactring;
pub mod plattice;

pub use error::{Error, Result};
