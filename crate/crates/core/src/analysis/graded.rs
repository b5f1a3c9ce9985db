use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::bkcore::{evp_image, Filtration};
use crate::exactring::Prime;
use crate::plattice::{lattice_quotient, PLattice};
use crate::{Error, Result};

/// Invariants of `gr^i M = Fil^i M / Fil^{i+1} M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub i: u32,
    pub free_rank: usize,
    /// Exponents `n` of the cyclic summands `Z/p^n`, ascending.
    pub torsion: Vec<u32>,
}

impl GradedPiece {
    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// The lattices `Fil^i M` for every computed stage.
pub fn evp_chain(filt: &Filtration) -> Vec<PLattice> {
    filt.stages
        .iter()
        .map(|s| evp_image(s, &filt.module))
        .collect()
}

/// `gr^i M` for `i = 0, ..., i_max - 1`.
pub fn graded_report(filt: &Filtration) -> Result<Vec<GradedPiece>> {
    let chain = evp_chain(filt);
    chain
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let q = lattice_quotient(&w[0], &w[1]).map_err(|e| {
                Error::Internal(format!("Fil^{} M is not inside Fil^{i} M: {e}", i + 1))
            })?;
            Ok(GradedPiece {
                i: i as u32,
                free_rank: q.free_rank,
                torsion: q.torsion,
            })
        })
        .collect()
}

/// Hodge–Tate weights and the index sets derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub p: Prime,
    /// Ascending, with multiplicity.
    pub weights: Vec<u32>,
    pub h: u32,
    /// `d_i = d - rank Fil^i M` for `i = 0, ..., h + 1`.
    pub d_table: Vec<usize>,
    /// `{r_j + m p <= h : m >= 0}`.
    pub j_set: BTreeSet<u32>,
    /// The same with `m > 0`.
    pub j_strict: BTreeSet<u32>,
}

impl WeightData {
    pub fn from_weights(mut weights: Vec<u32>, p: Prime) -> Self {
        weights.sort_unstable();
        let h = weights.last().copied().unwrap_or(0);
        let d = weights.len();
        let d_table = (0..=h + 1)
            .map(|i| d - weights.iter().filter(|&&r| r >= i).count())
            .collect();
        let step = p.get() as u32;
        let mut j_set = BTreeSet::new();
        let mut j_strict = BTreeSet::new();
        for &r in &weights {
            let mut x = r;
            let mut m = 0;
            while x <= h {
                j_set.insert(x);
                if m > 0 {
                    j_strict.insert(x);
                }
                x += step;
                m += 1;
            }
        }
        WeightData {
            p,
            weights,
            h,
            d_table,
            j_set,
            j_strict,
        }
    }
}

/// Weights are the levels where the rank of `Fil^i M` drops.
pub fn hodge_tate_weights(report: &[GradedPiece], d: usize, p: Prime) -> Result<WeightData> {
    let weights: Vec<u32> = report
        .iter()
        .flat_map(|g| core::iter::repeat_n(g.i, g.free_rank))
        .collect();
    if weights.len() != d {
        return Err(Error::InconsistentRanks(format!(
            "graded free ranks sum to {} in rank {d}",
            weights.len()
        )));
    }
    Ok(WeightData::from_weights(weights, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bkcore::{nygaard_filtration, BKModule, PolyMat};
    use crate::exactring::PolyU;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn weight_sets() {
        let wd = WeightData::from_weights(vec![4, 0], p(3));
        assert_eq!(wd.weights, vec![0, 4]);
        assert_eq!(wd.h, 4);
        assert_eq!(wd.j_set, set(&[0, 3, 4]));
        assert_eq!(wd.j_strict, set(&[3]));
        assert_eq!(wd.d_table, vec![0, 1, 1, 1, 1, 2]);

        let wd = WeightData::from_weights(vec![0, 1, 6], p(2));
        assert_eq!(wd.j_set, set(&[0, 1, 2, 3, 4, 5, 6]));
        assert_eq!(wd.j_strict, set(&[2, 3, 4, 5, 6]));

        let wd = WeightData::from_weights(vec![0, 4], p(3));
        assert_eq!(wd.j_strict, set(&[3]));
        assert!(WeightData::from_weights(vec![0, 1], p(2))
            .j_strict
            .is_empty());
    }

    #[test]
    fn hand_example_report() {
        let pr = p(2);
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        let m = BKModule::new(pr, b, None).unwrap();
        let f = nygaard_filtration(&m, None).unwrap();
        let report = graded_report(&f).unwrap();
        let free: Vec<usize> = report.iter().map(|g| g.free_rank).collect();
        assert_eq!(free, vec![1, 0, 0, 1]);
        assert!(report.iter().all(|g| g.torsion.is_empty()));
        let wd = hodge_tate_weights(&report, 2, pr).unwrap();
        assert_eq!(wd.weights, vec![0, 3]);
    }

    #[test]
    fn rank_one_report() {
        let pr = p(3);
        let m = BKModule::new(pr, PolyMat::diagonal(vec![PolyU::e_power(pr, 2)]), None).unwrap();
        let report = graded_report(&nygaard_filtration(&m, None).unwrap()).unwrap();
        let free: Vec<usize> = report.iter().map(|g| g.free_rank).collect();
        assert_eq!(free, vec![0, 0, 1]);
        assert!(matches!(
            hodge_tate_weights(&report, 2, pr),
            Err(Error::InconsistentRanks(_))
        ));
    }
}
