//! Breuil–Kisin modules and the Nygaard filtration on the Frobenius
//! pullback, `Fil^i = {x : B x ∈ E^i 𝔐}`.
//!
//! Free submodules are carried as square polynomial basis matrices whose
//! determinant is a unit times a power of `E`.

mod equality;
mod filtration;
mod module;
mod oracle;
mod polymat;
mod zpoly;

pub use equality::{free_basis_exponent, module_contains, module_equal};
pub use filtration::{evp_image, nygaard_filtration, nygaard_step, FiltStage, Filtration};
pub use module::{validate, BKModule};
pub use oracle::{
    e_multiple_model, mod_em_lattice_model, nygaard_direct_oracle, phi_matrix, truncate_vector,
    u_closure, OracleVerdict,
};
pub use polymat::PolyMat;
