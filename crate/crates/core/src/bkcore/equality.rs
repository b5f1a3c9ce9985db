//! Equality and containment of free submodules of `𝔖^d`, decided without
//! inverting power series.
//!
//! If `det A = γ E^k` with `γ` a unit, then `span(Bm) ⊆ span(A)` exactly when
//! `adj(A) Bm` is divisible by `E^k` entrywise: the quotient has p-integral
//! coefficients because `E` is monic, and multiplying by `γ⁻¹` stays in `𝔖`.

use alloc::format;

use super::polymat::PolyMat;
use super::zpoly;
use crate::exactring::{is_p_unit, Prime};
use crate::{Error, Result};

/// The exponent `k` with `det a = unit * E^k`.
pub fn free_basis_exponent(a: &PolyMat, p: Prime) -> Result<u32> {
    if !a.is_square() {
        return Err(Error::NotFreeBasis(format!(
            "{}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let det = a.det();
    let (k, cofactor) = det
        .split_e_power(p)
        .ok_or_else(|| Error::NotFreeBasis("zero determinant".into()))?;
    if !cofactor.is_unit_in_s(p) {
        return Err(Error::NotFreeBasis(format!(
            "determinant cofactor {cofactor} is not a unit"
        )));
    }
    Ok(k)
}

/// Whether every column of `b` lies in the 𝔖-span of the columns of `a`.
pub fn module_contains(a: &PolyMat, b: &PolyMat, p: Prime) -> Result<bool> {
    let k = free_basis_exponent(a, p)?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let (ar, sa) = zpoly::integral_columns(a);
    let (br, sb) = zpoly::integral_columns(b);
    if is_p_unit(&sa, p) && is_p_unit(&sb, p) {
        return Ok(zpoly::product_e_divisible(&zpoly::adjugate(&ar), &br, p, k));
    }
    let x = &a.adjugate() * b;
    Ok(x.entries()
        .iter()
        .all(|f| f.is_zero() || f.e_valuation(p).is_some_and(|v| v >= k)))
}

/// Whether `a` and `b` span the same free 𝔖-submodule.
pub fn module_equal(a: &PolyMat, b: &PolyMat, p: Prime) -> Result<bool> {
    let ka = free_basis_exponent(a, p)?;
    let kb = free_basis_exponent(b, p)?;
    if ka != kb || a.rows() != b.rows() {
        return Ok(false);
    }
    Ok(module_contains(a, b, p)? && module_contains(b, a, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::PolyU;
    use alloc::vec;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn e(k: u32) -> PolyU {
        PolyU::e_power(p2(), k)
    }

    #[test]
    fn equality_examples() {
        let a = PolyMat::diagonal(vec![PolyU::one(), e(1)]);
        let col_op = PolyMat::from_rows(vec![vec![PolyU::one(), PolyU::zero()], vec![e(1), e(1)]]);
        assert_eq!(module_equal(&a, &col_op, p2()), Ok(true));
        let deeper = PolyMat::diagonal(vec![PolyU::one(), e(2)]);
        assert_eq!(module_equal(&a, &deeper, p2()), Ok(false));
        assert_eq!(module_contains(&a, &deeper, p2()), Ok(true));
        assert_eq!(module_contains(&deeper, &a, p2()), Ok(false));

        // A * U with U polynomial of unit determinant 1 + 2u.
        let u = PolyMat::from_int_rows(&[&[&[1, 2], &[0, 3]], &[&[0], &[1]]]);
        let b = PolyMat::from_rows(vec![
            vec![e(1), PolyU::u()],
            vec![PolyU::zero(), PolyU::from_ints(&[1, 1])],
        ]);
        assert_eq!(free_basis_exponent(&b, p2()), Ok(1));
        assert_eq!(module_equal(&b, &(&b * &u), p2()), Ok(true));
    }

    #[test]
    fn rejects_non_free_basis() {
        let a = PolyMat::diagonal(vec![PolyU::from_ints(&[2]), PolyU::one()]);
        assert!(matches!(
            module_equal(&a, &a, p2()),
            Err(Error::NotFreeBasis(_))
        ));
        let z = PolyMat::zeros(2, 2);
        assert!(matches!(
            free_basis_exponent(&z, p2()),
            Err(Error::NotFreeBasis(_))
        ));
    }
}
