use alloc::vec::Vec;

use num_traits::Zero;

use super::matrix::QMat;
use crate::exactring::{residue_mod_p, valuation, Prime, Q};
use crate::{Error, Result};

/// Smith form over `Z_(p)`: `left * A * right` is diagonal with entries
/// `p^valuations[k]` for `k < rank` and zero afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub left: QMat,
    pub right: QMat,
    /// Nondecreasing p-valuations of the nonzero diagonal entries.
    pub valuations: Vec<i64>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }

    /// The diagonal matrix `left * A * right`, rebuilt from the valuations.
    pub fn diagonal(&self, p: Prime) -> QMat {
        let mut d = QMat::zeros(self.left.rows(), self.right.cols());
        for (k, &v) in self.valuations.iter().enumerate() {
            d[(k, k)] = p.pow_q(v);
        }
        d
    }
}

/// Diagonalizes `a` over `Z_(p)`. Pivots are chosen by minimal p-valuation,
/// ties broken by lowest (row, column).
pub fn snf_p(a: &QMat, p: Prime) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut work = a.clone();
    let mut left = QMat::identity(m);
    let mut right = QMat::identity(n);
    let mut valuations = Vec::new();

    for t in 0..m.min(n) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(v) = valuation(&work[(i, j)], p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        work.swap_rows(t, r);
        left.swap_rows(t, r);
        work.swap_cols(t, c);
        right.swap_cols(t, c);

        let unit = p.pow_q(v) / &work[(t, t)];
        work.scale_row(t, &unit);
        left.scale_row(t, &unit);

        let pivot = work[(t, t)].clone();
        for i in t + 1..m {
            if work[(i, t)].is_zero() {
                continue;
            }
            let f = &work[(i, t)] / &pivot;
            work.row_axpy(i, t, &f);
            left.row_axpy(i, t, &f);
        }
        for j in t + 1..n {
            if work[(t, j)].is_zero() {
                continue;
            }
            let f = &work[(t, j)] / &pivot;
            work.col_axpy(j, t, &f);
            right.col_axpy(j, t, &f);
        }
        valuations.push(v);
    }
    SnfResult {
        left,
        right,
        valuations,
    }
}

/// Basis of `{x in Z_(p)^n : A x = 0}`. The result is saturated and every
/// vector is p-integral.
pub fn saturated_kernel(a: &QMat, p: Prime) -> Vec<Vec<Q>> {
    let snf = snf_p(a, p);
    (snf.rank()..a.cols())
        .map(|j| snf.right.column(j))
        .collect()
}

/// A p-integral solution of `a y = b`, if one exists.
pub fn solve_p_integral(a: &QMat, b: &[Q], p: Prime) -> Option<Vec<Q>> {
    let snf = snf_p(a, p);
    let z = snf.left.mul_vec(b);
    let mut y = alloc::vec![Q::zero(); a.cols()];
    for (k, zk) in z.iter().enumerate() {
        match snf.valuations.get(k) {
            Some(&v) => {
                let yk = zk / p.pow_q(v);
                if !crate::exactring::is_p_integral(&yk, p) {
                    return None;
                }
                y[k] = yk;
            }
            None if !zk.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.right.mul_vec(&y))
}

/// Completes a basis of a saturated submodule of `Z_(p)^d` to a basis of
/// `Z_(p)^d`. The first columns of the result are `vectors`, the rest are
/// standard basis vectors picked greedily by index.
pub fn extend_to_basis(vectors: &[Vec<Q>], d: usize, p: Prime) -> Result<QMat> {
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(
            "vector length differs from ambient dimension".into(),
        ));
    }
    let pm = p.get();
    let mut echelon = FpEchelon::new(pm);
    for v in vectors {
        let row: Vec<u64> = v
            .iter()
            .map(|x| residue_mod_p(x, p))
            .collect::<Option<_>>()
            .ok_or(Error::NotSaturated)?;
        if !echelon.insert(&row) {
            return Err(Error::NotSaturated);
        }
    }
    let mut cols: Vec<Vec<Q>> = vectors.to_vec();
    for i in 0..d {
        if cols.len() == d {
            break;
        }
        let mut e = alloc::vec![0u64; d];
        e[i] = 1;
        if echelon.insert(&e) {
            let mut q = alloc::vec![Q::zero(); d];
            q[i] = crate::exactring::int_q(1);
            cols.push(q);
        }
    }
    debug_assert_eq!(cols.len(), d);
    Ok(QMat::from_columns(d, &cols))
}

/// Incremental row echelon form over `F_p`, used for independence tests.
struct FpEchelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl FpEchelon {
    fn new(p: u64) -> Self {
        FpEchelon {
            p,
            rows: Vec::new(),
        }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c != 0 {
                for (a, b) in w.iter_mut().zip(row) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = crate::exactring::fp_inv(w[pivot], p);
        for a in w.iter_mut() {
            *a = *a * inv % p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&w) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        self.rows.push((pivot, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::int_q;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn check_snf(a: &QMat, pr: Prime) -> SnfResult {
        let s = snf_p(a, pr);
        assert_eq!(&(&s.left * a) * &s.right, s.diagonal(pr));
        assert_eq!(valuation(&s.left.det(), pr), Some(0));
        assert_eq!(valuation(&s.right.det(), pr), Some(0));
        assert!(s.valuations.windows(2).all(|w| w[0] <= w[1]));
        s
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            check_snf(&QMat::from_ints(&[&[2, 0], &[0, 3]]), p(3)).valuations,
            vec![0, 1]
        );
        assert_eq!(check_snf(&QMat::from_ints(&[&[0]]), p(2)).rank(), 0);
        assert_eq!(
            check_snf(&QMat::from_ints(&[&[1, 1], &[1, 1]]), p(2)).valuations,
            vec![0]
        );
        assert_eq!(
            check_snf(&QMat::from_ints(&[&[4, 6, 2], &[2, 8, 10]]), p(2)).valuations,
            vec![1, 1]
        );
    }

    #[test]
    fn kernel_examples() {
        let k = saturated_kernel(&QMat::from_ints(&[&[0, 2], &[0, 1]]), p(2));
        assert_eq!(k, vec![vec![int_q(1), int_q(0)]]);
        assert!(saturated_kernel(&QMat::from_ints(&[&[1, 2], &[0, 1]]), p(2)).is_empty());
        let k = saturated_kernel(&QMat::from_ints(&[&[2, 4]]), p(2));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] + &(&k[0][1] * int_q(2)), int_q(0));
        assert!(extend_to_basis(&k, 2, p(2)).is_ok());
    }

    #[test]
    fn solve_examples() {
        let a = QMat::from_ints(&[&[2, 0], &[0, 1]]);
        let y = solve_p_integral(&a, &[int_q(2), int_q(3)], p(2)).unwrap();
        assert_eq!(a.mul_vec(&y), vec![int_q(2), int_q(3)]);
        assert!(solve_p_integral(&a, &[int_q(1), int_q(0)], p(2)).is_none());
        assert!(solve_p_integral(&a, &[int_q(1), int_q(0)], p(3)).is_some());
        let singular = QMat::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(solve_p_integral(&singular, &[int_q(1), int_q(0)], p(5)).is_none());
    }

    #[test]
    fn extension_examples() {
        let w = extend_to_basis(&[vec![int_q(1), int_q(0)]], 2, p(2)).unwrap();
        assert_eq!(valuation(&w.det(), p(2)), Some(0));
        let w = extend_to_basis(&[vec![int_q(2), int_q(-1)]], 2, p(2)).unwrap();
        assert_eq!(w.column(0), vec![int_q(2), int_q(-1)]);
        assert_eq!(valuation(&w.det(), p(2)), Some(0));
        assert_eq!(
            extend_to_basis(&[vec![int_q(2), int_q(0)]], 2, p(2)),
            Err(Error::NotSaturated)
        );
    }
}
