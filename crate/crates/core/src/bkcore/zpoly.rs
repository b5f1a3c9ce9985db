//! Integer polynomial kernels for the determinant and containment tests.
//!
//! Scaling a column by a p-unit does not change the span, so a p-integral
//! matrix can be brought to integer entries and handled without rational
//! normalization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polymat::PolyMat;
use crate::exactring::{PolyU, Prime, Q};

/// Coefficients in increasing degree, without trailing zeros.
pub(crate) type ZPoly = Vec<BigInt>;

fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(out)
}

fn add_assign(acc: &mut ZPoly, b: &[BigInt]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), BigInt::zero());
    }
    for (o, y) in acc.iter_mut().zip(b) {
        *o += y;
    }
    let t = core::mem::take(acc);
    *acc = trim(t);
}

/// `a / b` when the quotient has integer coefficients and no remainder.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let lead = b.last()?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        q[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(q))
}

/// Whether `(u - p)^k` divides `f`.
pub(crate) fn e_divisible(f: &[BigInt], p: Prime, k: u32) -> bool {
    let pb = p.to_bigint();
    let mut cur: ZPoly = f.to_vec();
    for _ in 0..k {
        if cur.is_empty() {
            return true;
        }
        // Synthetic division by u - p.
        let n = cur.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            carry = &cur[i] + &carry * &pb;
            q[i - 1] = carry.clone();
        }
        if !(&cur[0] + &carry * &pb).is_zero() {
            return false;
        }
        cur = trim(q);
    }
    true
}

/// Integer rows of `m` after multiplying each column by the lcm of its
/// denominators, together with the product of those multipliers. For a
/// p-integral matrix the product is a p-unit.
pub(crate) fn integral_columns(m: &PolyMat) -> (Vec<Vec<ZPoly>>, Q) {
    let scales: Vec<BigInt> = (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .flat_map(|i| m[(i, j)].coeffs())
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
        })
        .collect();
    let rows = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s = &scales[j];
                    trim(
                        m[(i, j)]
                            .coeffs()
                            .iter()
                            .map(|c| c.numer() * (s / c.denom()))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    let product = scales.into_iter().fold(BigInt::one(), |acc, s| acc * s);
    (rows, Q::from_integer(product))
}

/// Fraction-free Gaussian elimination over `Z[u]`.
pub(crate) fn det(rows: &[Vec<ZPoly>]) -> ZPoly {
    let n = rows.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut a: Vec<Vec<ZPoly>> = rows.to_vec();
    let mut negate = false;
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n - 1 {
        if a[k][k].is_empty() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_empty()) else {
                return Vec::new();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(&mul(&a[i][j], &a[k][k]), &mul(&a[i][k], &a[k][j]));
                a[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.into_iter().map(|x| -x).collect()
    } else {
        d
    }
}

/// Transposed cofactor matrix.
pub(crate) fn adjugate(rows: &[Vec<ZPoly>]) -> Vec<Vec<ZPoly>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![vec![BigInt::one()]]];
    }
    let cofactor = |i: usize, j: usize| {
        let minor: Vec<Vec<ZPoly>> = rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let m = det(&minor);
        if (i + j).is_multiple_of(2) {
            m
        } else {
            m.into_iter().map(|x| -x).collect()
        }
    };
    (0..n)
        .map(|j| (0..n).map(|i| cofactor(i, j)).collect())
        .collect()
}

/// Whether every entry of `a * b` is divisible by `E^k`.
pub(crate) fn product_e_divisible(a: &[Vec<ZPoly>], b: &[Vec<ZPoly>], p: Prime, k: u32) -> bool {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().all(|row| {
        (0..cols).all(|j| {
            let mut acc = ZPoly::new();
            for (l, x) in row.iter().enumerate() {
                if !x.is_empty() && !b[l][j].is_empty() {
                    add_assign(&mut acc, &mul(x, &b[l][j]));
                }
            }
            e_divisible(&acc, p, k)
        })
    })
}

pub(crate) fn to_poly(f: &[BigInt]) -> PolyU {
    PolyU::from_coeffs(f.iter().cloned().map(Q::from_integer).collect())
}
