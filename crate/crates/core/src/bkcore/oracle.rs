//! Brute-force models of submodules of `(𝔖/E^m)^d` as lattices in
//! `Q^{m d}`. Coordinates are component-major: index `j * m + a` holds the
//! coefficient of `E^a` in component `j`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::equality::module_contains;
use super::module::BKModule;
use super::polymat::PolyMat;
use crate::exactring::{PolyU, Prime, Q};
use crate::plattice::{saturated_kernel, PLattice, QMat};
use crate::Result;

/// Image of a polynomial vector in `(𝔖/E^m)^d`.
pub fn truncate_vector(v: &[PolyU], m: usize, p: Prime) -> Vec<Q> {
    let mut out = vec![Q::zero(); v.len() * m];
    for (j, f) in v.iter().enumerate() {
        for (a, c) in f.e_expand(p).into_iter().take(m).enumerate() {
            out[j * m + a] = c;
        }
    }
    out
}

/// Multiplication by `u = E + p` on `(𝔖/E^m)^d`.
fn times_u(v: &[Q], m: usize, p: Prime) -> Vec<Q> {
    let pq = p.to_q();
    let mut out = vec![Q::zero(); v.len()];
    for j in 0..v.len() / m {
        for a in 0..m {
            let mut x = &v[j * m + a] * &pq;
            if a > 0 {
                x += &v[j * m + a - 1];
            }
            out[j * m + a] = x;
        }
    }
    out
}

/// The Z_(p)-lattice generated by `vectors` and all their `u`-multiples.
pub fn u_closure(vectors: Vec<Vec<Q>>, dim: usize, m: usize, p: Prime) -> Result<PLattice> {
    let mut lattice = PLattice::new(p, dim, vectors)?;
    loop {
        let mut gens = lattice.basis().to_vec();
        gens.extend(lattice.basis().iter().map(|v| times_u(v, m, p)));
        let next = PLattice::new(p, dim, gens)?;
        if next == lattice {
            return Ok(lattice);
        }
        lattice = next;
    }
}

/// The image of the 𝔖-span of the columns of `c` in `(𝔖/E^m)^d`.
pub fn mod_em_lattice_model(c: &PolyMat, m: usize, p: Prime) -> Result<PLattice> {
    let d = c.rows();
    let gens = c
        .columns()
        .iter()
        .map(|col| truncate_vector(col, m, p))
        .collect();
    u_closure(gens, d * m, m, p)
}

/// The image of `E 𝔐^*` in `(𝔖/E^m)^d`: vectors with vanishing `E^0`
/// coordinates.
pub fn e_multiple_model(d: usize, m: usize, p: Prime) -> PLattice {
    let gens = (0..d)
        .flat_map(|j| (1..m).map(move |a| (j, a)))
        .map(|(j, a)| {
            let mut v = vec![Q::zero(); d * m];
            v[j * m + a] = Q::from_integer(1.into());
            v
        })
        .collect();
    PLattice::new(p, d * m, gens).expect("dimensions agree")
}

/// The matrix of `B` acting on `(𝔖/E^i)^d`.
pub fn phi_matrix(m: &BKModule, i: usize) -> QMat {
    let p = m.prime();
    let d = m.rank();
    let b = m.frobenius();
    let mut phi = QMat::zeros(d * i, d * i);
    for k in 0..d {
        for j in 0..d {
            let exp = b[(j, k)].e_expand(p);
            for a in 0..i {
                for (t, c) in exp.iter().enumerate() {
                    if a + t >= i {
                        break;
                    }
                    phi[(j * i + a + t, k * i + a)] = c.clone();
                }
            }
        }
    }
    phi
}

/// Outcome of comparing a candidate basis of `Fil^i` with the direct kernel
/// computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub level: u32,
    /// `ker Φ_i`, i.e. `Fil^i / E^i` computed from the definition.
    pub kernel: PLattice,
    /// The candidate's image in `(𝔖/E^i)^d`.
    pub candidate: PLattice,
    /// Whether the candidate contains `E^i 𝔐^*`.
    pub contains_e_power: bool,
    pub agrees: bool,
}

/// Checks a candidate basis of `Fil^i` against the kernel of `B` on
/// `(𝔖/E^i)^d`. Requires `i >= 1`.
pub fn nygaard_direct_oracle(m: &BKModule, i: u32, candidate: &PolyMat) -> Result<OracleVerdict> {
    assert!(i >= 1, "oracle level must be positive");
    let p = m.prime();
    let d = m.rank();
    let n = i as usize;
    let kernel = PLattice::new(p, d * n, saturated_kernel(&phi_matrix(m, n), p))?;
    let cand = mod_em_lattice_model(candidate, n, p)?;
    let e_power = PolyMat::identity(d).mul_e_power(p, i);
    let contains_e_power = module_contains(candidate, &e_power, p).unwrap_or(false);
    let agrees = contains_e_power && cand == kernel;
    Ok(OracleVerdict {
        level: i,
        kernel,
        candidate: cand,
        contains_e_power,
        agrees,
    })
}
