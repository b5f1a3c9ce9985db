//! Exact arithmetic for `Z_p[[u]]` restricted to polynomial representatives.
//!
//! Elements are polynomials in `u` with p-integral rational coefficients.
//! Every algorithm downstream only multiplies, adds, evaluates at `u = p` and
//! divides exactly by powers of the monic `E = u - p`, so no precision model
//! is ever needed.

mod parse;
mod poly;
mod scalar;

pub use parse::parse_poly;
pub use poly::PolyU;
pub use scalar::{
    canonical_rep, check_p_integral, fp_inv, fp_pow, int_q, int_valuation, is_p_integral,
    is_p_unit, residue_mod_p, residue_mod_pk, unit_content, valuation, Prime, Q,
};
