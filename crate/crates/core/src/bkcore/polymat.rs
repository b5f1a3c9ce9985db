use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::exactring::{unit_content, PolyU, Prime, Q};
use crate::plattice::QMat;
use crate::{Error, Result};

/// Dense row-major matrix of polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    data: Vec<PolyU>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat {
            rows,
            cols,
            data: vec![PolyU::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = PolyU::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<PolyU>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, f) in entries.into_iter().enumerate() {
            m[(i, i)] = f;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PolyU>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(dim: usize, cols: &[Vec<PolyU>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim, "column length");
            for (i, f) in c.iter().enumerate() {
                m[(i, j)] = f.clone();
            }
        }
        m
    }

    /// Constant matrix.
    pub fn from_qmat(a: &QMat) -> Self {
        let mut m = Self::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m[(i, j)] = PolyU::constant(a[(i, j)].clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[&[i64]]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| PolyU::from_ints(c)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[PolyU] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<PolyU> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<PolyU>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(PolyU::is_zero)
    }

    pub fn max_degree(&self) -> usize {
        self.data
            .iter()
            .filter_map(PolyU::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn map(&self, f: impl Fn(&PolyU) -> PolyU) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&PolyU) -> Result<PolyU>) -> Result<Self> {
        let data = self.data.iter().map(f).collect::<Result<_>>()?;
        Ok(PolyMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &PolyU) -> Self {
        self.map(|f| f * c)
    }

    /// Entrywise product with `E^k`.
    pub fn mul_e_power(&self, p: Prime, k: u32) -> Self {
        self.scale(&PolyU::e_power(p, k))
    }

    /// Entrywise exact division by `E^k`.
    pub fn div_e_power(&self, p: Prime, k: u32) -> Result<Self> {
        self.try_map(|f| f.div_by_e_exact(p, k))
    }

    /// Multiplies column `j` by `f`.
    pub fn scale_col(&mut self, j: usize, f: &PolyU) {
        for i in 0..self.rows {
            let v = &self[(i, j)] * f;
            self[(i, j)] = v;
        }
    }

    /// Divides every column by its p-unit content: the span over `𝔖` is
    /// unchanged and the entries become integer polynomials.
    pub fn normalize_columns(&mut self, p: Prime) {
        for j in 0..self.cols {
            let c = unit_content((0..self.rows).flat_map(|i| self[(i, j)].coeffs()), p);
            if !c.is_one() {
                let inv = c.recip();
                for i in 0..self.rows {
                    let v = self[(i, j)].scale(&inv);
                    self[(i, j)] = v;
                }
            }
        }
    }

    pub fn eval_at_p(&self, p: Prime) -> QMat {
        let mut out = QMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].eval_at_p(p);
            }
        }
        out
    }

    pub fn is_p_integral(&self, p: Prime) -> bool {
        self.data.iter().all(|f| f.is_p_integral(p))
    }

    pub fn check_p_integral(&self, p: Prime) -> Result<()> {
        self.data.iter().try_for_each(|f| f.check_p_integral(p))
    }

    /// Submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free elimination over `Z[u]` after clearing
    /// column denominators.
    pub fn det(&self) -> PolyU {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let (rows, scale) = super::zpoly::integral_columns(self);
        super::zpoly::to_poly(&super::zpoly::det(&rows)).scale(&scale.recip())
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// kept as an independent check for small sizes.
    pub fn laplace_det(&self) -> PolyU {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => PolyU::one(),
            1 => self[(0, 0)].clone(),
            _ => {
                let rows: Vec<usize> = (1..n).collect();
                let mut acc = PolyU::zero();
                for j in 0..n {
                    if self[(0, j)].is_zero() {
                        continue;
                    }
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let term = &self[(0, j)] * &self.submatrix(&rows, &cols).laplace_det();
                    acc = if j % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }

    /// Classical adjugate, `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).det();
                adj[(j, i)] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        adj
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Mod-p reduction of every entry, as dense `F_p[u]` coefficient lists.
    pub fn mod_p(&self, p: Prime) -> Result<Vec<Vec<u64>>> {
        self.data
            .iter()
            .map(|f| {
                f.mod_p(p).ok_or_else(|| Error::NotPIntegral {
                    value: alloc::format!("{f}"),
                    p: p.get(),
                })
            })
            .collect()
    }

    /// Renders entries in powers of `E`.
    pub fn display_in_e(&self, p: Prime) -> Vec<Vec<alloc::string::String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)].display_in_e(p))
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for PolyMat {
    type Output = PolyU;
    fn index(&self, (i, j): (usize, usize)) -> &PolyU {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut PolyU {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &PolyMat {
    type Output = PolyMat;
    fn mul(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = PolyMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    let cur = &out[(i, j)] + &t;
                    out[(i, j)] = cur;
                }
            }
        }
        out
    }
}

impl Mul<&QMat> for &PolyMat {
    type Output = PolyMat;
    fn mul(self, rhs: &QMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows(), "shape mismatch");
        let mut out = PolyMat::zeros(self.rows, rhs.cols());
        for i in 0..self.rows {
            for j in 0..rhs.cols() {
                let mut acc = PolyU::zero();
                for k in 0..self.cols {
                    let c: &Q = &rhs[(k, j)];
                    if !c.is_zero() {
                        acc = &acc + &self[(i, k)].scale(c);
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn e(k: u32) -> PolyU {
        PolyU::e_power(p(2), k)
    }

    #[test]
    fn det_and_adjugate() {
        let b = PolyMat::from_rows(vec![
            vec![e(3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        assert_eq!(b.det(), e(3));
        assert_eq!(b.laplace_det(), e(3));
        let adj = b.adjugate();
        assert_eq!(&adj * &b, PolyMat::identity(2).scale(&e(3)));

        let m = PolyMat::from_int_rows(&[
            &[&[0, 1], &[1], &[2, 0, 1]],
            &[&[3], &[0, 0, 1], &[1, 1]],
            &[&[1, 2], &[5], &[0]],
        ]);
        assert_eq!(m.det(), m.laplace_det());
        assert_eq!(&m.adjugate() * &m, PolyMat::identity(3).scale(&m.det()));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = PolyMat::from_int_rows(&[&[&[0], &[1]], &[&[1], &[0, 1]]]);
        assert_eq!(m.det(), PolyU::from_ints(&[-1]));
    }
}
