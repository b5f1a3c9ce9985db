use alloc::vec::Vec;
use core::cell::OnceCell;

use num_traits::Zero;

use super::matrix::QMat;
use super::snf::{saturated_kernel, snf_p};
use crate::exactring::{canonical_rep, valuation, Prime, Q};
use crate::{Error, Result};

/// A finitely generated `Z_(p)`-submodule of `Q^d`.
///
/// Stored as a generator list; the canonical basis is computed on first use
/// and cached. Equality is equality of spans.
#[derive(Clone, Debug)]
pub struct PLattice {
    p: Prime,
    dim: usize,
    generators: Vec<Vec<Q>>,
    canonical: OnceCell<Vec<Vec<Q>>>,
}

/// Invariants of a quotient `L / L'` of lattices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    /// Exponents `n > 0` of the cyclic factors `Z/p^n`, nondecreasing.
    pub torsion: Vec<u32>,
}

impl QuotientInvariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl PLattice {
    pub fn new(p: Prime, dim: usize, generators: Vec<Vec<Q>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(
                "generator length differs from ambient dimension".into(),
            ));
        }
        Ok(PLattice {
            p,
            dim,
            generators,
            canonical: OnceCell::new(),
        })
    }

    pub fn zero(p: Prime, dim: usize) -> Self {
        PLattice {
            p,
            dim,
            generators: Vec::new(),
            canonical: OnceCell::new(),
        }
    }

    /// `Z_(p)^d`.
    pub fn standard(p: Prime, dim: usize) -> Self {
        let gens = QMat::identity(dim).columns();
        PLattice {
            p,
            dim,
            generators: gens,
            canonical: OnceCell::new(),
        }
    }

    /// Span of the columns of `m`.
    pub fn from_columns(p: Prime, m: &QMat) -> Self {
        PLattice {
            p,
            dim: m.rows(),
            generators: m.columns(),
            canonical: OnceCell::new(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    /// Canonical basis: column echelon form with pivot entries `p^k`, pivot
    /// rows increasing, and every entry in a later pivot row reduced to the
    /// canonical representative modulo that pivot.
    pub fn basis(&self) -> &[Vec<Q>] {
        self.canonical
            .get_or_init(|| hermite_basis(&self.generators, self.dim, self.p))
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    pub fn is_zero_lattice(&self) -> bool {
        self.rank() == 0
    }

    pub fn basis_matrix(&self) -> QMat {
        QMat::from_columns(self.dim, self.basis())
    }

    /// Coordinates of `x` in [`PLattice::basis`], or `None` if `x` is not in
    /// the lattice.
    pub fn coordinates(&self, x: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(x.len(), self.dim);
        let mut rest = x.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for b in self.basis() {
            let row = pivot_row(b);
            let c = &rest[row] / &b[row];
            if valuation(&c, self.p).is_some_and(|v| v < 0) {
                return None;
            }
            if !c.is_zero() {
                for (r, bi) in rest.iter_mut().zip(b) {
                    *r -= &c * bi;
                }
            }
            coords.push(c);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.coordinates(x).is_some()
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &PLattice) -> bool {
        self.dim == other.dim && other.basis().iter().all(|g| self.contains(g))
    }

    /// `Z/p^n` and free invariants of `self / sub`.
    pub fn quotient(&self, sub: &PLattice) -> Result<QuotientInvariants> {
        lattice_quotient(self, sub)
    }
}

impl PartialEq for PLattice {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.basis() == other.basis()
    }
}

impl Eq for PLattice {}

fn pivot_row(b: &[Q]) -> usize {
    b.iter()
        .position(|x| !x.is_zero())
        .expect("basis vectors are nonzero")
}

fn hermite_basis(gens: &[Vec<Q>], dim: usize, p: Prime) -> Vec<Vec<Q>> {
    let mut pool: Vec<Vec<Q>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<(i64, usize, Vec<Q>)> = Vec::new();
    for row in 0..dim {
        if pool.is_empty() {
            break;
        }
        let mut best: Option<(i64, usize)> = None;
        for (idx, g) in pool.iter().enumerate() {
            if let Some(v) = valuation(&g[row], p) {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, idx));
                }
            }
        }
        let Some((v, idx)) = best else { continue };
        let mut pivot = pool.swap_remove(idx);
        let unit = p.pow_q(v) / &pivot[row];
        pivot.iter_mut().for_each(|x| *x *= &unit);
        for g in pool.iter_mut() {
            if g[row].is_zero() {
                continue;
            }
            let f = &g[row] / &pivot[row];
            for (a, b) in g.iter_mut().zip(&pivot) {
                *a -= &f * b;
            }
        }
        pool.retain(|g| g.iter().any(|x| !x.is_zero()));
        basis.push((v, row, pivot));
    }
    debug_assert!(pool.is_empty());

    // Reduce entries in later pivot rows.
    let pivots: Vec<(usize, i64)> = basis.iter().map(|(v, row, _)| (*row, *v)).collect();
    let mut basis: Vec<Vec<Q>> = basis.into_iter().map(|(_, _, b)| b).collect();
    for j in 0..basis.len() {
        for jj in j + 1..basis.len() {
            let (row, k) = pivots[jj];
            let x = basis[j][row].clone();
            let rep = canonical_rep(&x, p, k);
            if rep != x {
                let c = (x - rep) / &basis[jj][row];
                let (head, tail) = basis.split_at_mut(jj);
                for (a, b) in head[j].iter_mut().zip(&tail[0]) {
                    *a -= &c * b;
                }
            }
        }
    }
    basis
}

fn coordinate_matrix(outer: &PLattice, inner: &PLattice) -> Result<QMat> {
    let cols: Vec<Vec<Q>> = inner
        .basis()
        .iter()
        .map(|g| outer.coordinates(g).ok_or(Error::NotContained))
        .collect::<Result<_>>()?;
    Ok(QMat::from_columns(outer.rank(), &cols))
}

/// Free rank and torsion exponents of `outer / inner`; requires `inner ⊆ outer`.
pub fn lattice_quotient(outer: &PLattice, inner: &PLattice) -> Result<QuotientInvariants> {
    if outer.dim != inner.dim {
        return Err(Error::DimensionMismatch(
            "lattices live in different ambient spaces".into(),
        ));
    }
    let coords = coordinate_matrix(outer, inner)?;
    let snf = snf_p(&coords, outer.p);
    let torsion: Vec<u32> = snf
        .valuations
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| v as u32)
        .collect();
    Ok(QuotientInvariants {
        free_rank: outer.rank() - snf.rank(),
        torsion,
    })
}

/// `ambient ∩ (Q-span of sub)`; requires `sub ⊆ ambient`.
pub fn saturate(sub: &PLattice, ambient: &PLattice) -> Result<PLattice> {
    if sub.dim != ambient.dim {
        return Err(Error::DimensionMismatch(
            "lattices live in different ambient spaces".into(),
        ));
    }
    let coords = coordinate_matrix(ambient, sub)?;
    let snf = snf_p(&coords, ambient.p);
    let left_inv = snf.left.inverse().expect("Smith transforms are invertible");
    let amb = ambient.basis_matrix();
    let gens = (0..snf.rank())
        .map(|j| amb.mul_vec(&left_inv.column(j)))
        .collect();
    PLattice::new(ambient.p, ambient.dim, gens)
}

/// `a ∩ b` over `Z_(p)`.
pub fn lattice_intersect(a: &PLattice, b: &PLattice) -> Result<PLattice> {
    if a.dim != b.dim || a.p != b.p {
        return Err(Error::DimensionMismatch(
            "lattices live in different ambient spaces".into(),
        ));
    }
    if a.rank() == 0 || b.rank() == 0 {
        return Ok(PLattice::zero(a.p, a.dim));
    }
    let ba = a.basis_matrix();
    let stacked = ba.hstack(&b.basis_matrix().neg());
    let kernel = saturated_kernel(&stacked, a.p);
    let ra = a.rank();
    let gens = kernel.iter().map(|k| ba.mul_vec(&k[..ra])).collect();
    PLattice::new(a.p, a.dim, gens)
}

/// `p^k L`.
pub fn scale_lattice(l: &PLattice, k: i64) -> PLattice {
    let s = l.p.pow_q(k);
    let gens = l
        .basis()
        .iter()
        .map(|g| g.iter().map(|x| x * &s).collect())
        .collect();
    PLattice {
        p: l.p,
        dim: l.dim,
        generators: gens,
        canonical: OnceCell::new(),
    }
}

/// Sum of two lattices.
pub fn lattice_sum(a: &PLattice, b: &PLattice) -> PLattice {
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    PLattice {
        p: a.p,
        dim: a.dim,
        generators: gens,
        canonical: OnceCell::new(),
    }
}
