use alloc::format;
use alloc::string::String;

use super::polymat::PolyMat;
use crate::exactring::Prime;
use crate::{Error, Result};

/// A Breuil–Kisin module of rank `d`, given by the matrix `B` of the
/// linearized Frobenius. Column `j` of `B` is the image of the `j`-th basis
/// vector of the Frobenius pullback, written in the basis of the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BKModule {
    p: Prime,
    frobenius: PolyMat,
    name: Option<String>,
    det_exponent: u32,
}

impl BKModule {
    /// Builds and validates a module.
    pub fn new(p: Prime, frobenius: PolyMat, name: Option<String>) -> Result<Self> {
        let det_exponent = validate(p, &frobenius)?;
        Ok(BKModule {
            p,
            frobenius,
            name,
            det_exponent,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.frobenius.rows()
    }

    pub fn frobenius(&self) -> &PolyMat {
        &self.frobenius
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// The exponent `k` in `det B = unit * E^k`.
    pub fn det_exponent(&self) -> u32 {
        self.det_exponent
    }
}

/// Checks that `b` is a nonzero square p-integral matrix with
/// `det b = unit * E^k`, and returns `k`.
pub fn validate(p: Prime, b: &PolyMat) -> Result<u32> {
    if b.rows() == 0 {
        return Err(Error::ZeroRank);
    }
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Frobenius matrix is {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    b.check_p_integral(p)?;
    if b.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let det = b.det();
    let (k, cofactor) = det.split_e_power(p).ok_or(Error::ZeroDeterminant)?;
    if !cofactor.is_unit_in_s(p) {
        return Err(Error::InfiniteHeight {
            cofactor: format!("{cofactor}"),
        });
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::PolyU;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn validate_examples() {
        let pr = p(2);
        let hand = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        assert_eq!(validate(pr, &hand), Ok(3));

        let two_e = |q: Prime| {
            PolyMat::from_rows(vec![
                vec![PolyU::from_ints(&[2]), PolyU::zero()],
                vec![PolyU::zero(), PolyU::eisenstein(q)],
            ])
        };
        assert_eq!(validate(p(3), &two_e(p(3))), Ok(1));
        assert!(matches!(
            validate(p(2), &two_e(p(2))),
            Err(Error::InfiniteHeight { .. })
        ));
    }

    #[test]
    fn rejects_degenerate_input() {
        let pr = p(3);
        assert_eq!(validate(pr, &PolyMat::zeros(0, 0)), Err(Error::ZeroRank));
        assert_eq!(validate(pr, &PolyMat::zeros(2, 2)), Err(Error::ZeroMatrix));
        let singular = PolyMat::from_int_rows(&[&[&[0, 1], &[0, 1]], &[&[1], &[1]]]);
        assert_eq!(validate(pr, &singular), Err(Error::ZeroDeterminant));
        let not_integral =
            PolyMat::diagonal(vec![PolyU::from_coeffs(vec![crate::exactring::Q::new(
                1.into(),
                3.into(),
            )])]);
        assert!(matches!(
            validate(pr, &not_integral),
            Err(Error::NotPIntegral { .. })
        ));
        assert!(matches!(
            validate(pr, &PolyMat::zeros(1, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
