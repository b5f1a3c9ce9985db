use alloc::format;
use alloc::vec::Vec;

use super::checks::{violation, CheckReport};
use super::graded::{evp_chain, GradedPiece, WeightData};
use crate::bkcore::{module_equal, Filtration, PolyMat};
use crate::exactring::{PolyU, Q};
use crate::plattice::{extend_to_basis, saturate, solve_p_integral, PLattice, QMat};

pub const ADAPTED: &str = "adapted-basis";

/// Whether `Fil^i M` is saturated in `M` and in `Fil^{i-1} M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationProfile {
    pub in_m: Vec<bool>,
    /// Entry `i` compares `Fil^i M` with `Fil^{i-1} M`; entry 0 is `true`.
    pub stepwise: Vec<bool>,
}

pub fn saturation_profile(filt: &Filtration) -> SaturationProfile {
    let chain = evp_chain(filt);
    let saturated_in =
        |l: &PLattice, ambient: &PLattice| saturate(l, ambient).is_ok_and(|s| &s == l);
    let in_m = chain.iter().map(|l| saturated_in(l, &chain[0])).collect();
    let stepwise = core::iter::once(true)
        .chain(chain.windows(2).map(|w| saturated_in(&w[1], &w[0])))
        .collect();
    SaturationProfile { in_m, stepwise }
}

/// An 𝔖-basis `𝔢_j` (columns) with levels `s_j`, such that the
/// `E^{max(0, i - s_j)} 𝔢_j` form a basis of `Fil^i` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub basis: PolyMat,
    pub levels: Vec<u32>,
}

impl AdaptedBasis {
    /// The basis of `Fil^i` it predicts.
    pub fn stage_basis(&self, i: u32, p: crate::exactring::Prime) -> PolyMat {
        let mut c = self.basis.clone();
        for (j, &s) in self.levels.iter().enumerate() {
            c.scale_col(j, &PolyU::e_power(p, i.saturating_sub(s)));
        }
        c
    }
}

/// An adapted basis exists iff no graded piece below `h` has torsion.
pub fn decide_adapted_basis(report: &[GradedPiece], wd: &WeightData) -> bool {
    report
        .iter()
        .filter(|g| g.i < wd.h)
        .all(|g| !g.has_torsion())
}

/// Splits the chain `Fil^h M ⊂ ... ⊂ Fil^0 M = M` from the top into a basis
/// of `M` with levels, lifts each vector into the stage of its level, and
/// verifies the result. `None` when any step fails.
pub fn construct_adapted_basis(filt: &Filtration) -> Option<AdaptedBasis> {
    let h = filt.height()?;
    let p = filt.module.prime();
    let d = filt.module.rank();
    let chain = evp_chain(filt);
    if chain.len() < h as usize + 2 {
        return None;
    }

    let mut vectors: Vec<Vec<Q>> = Vec::new();
    let mut levels: Vec<u32> = Vec::new();
    for i in (0..=h).rev() {
        let lattice = &chain[i as usize];
        let basis = lattice.basis_matrix();
        let coords: Vec<Vec<Q>> = vectors
            .iter()
            .map(|v| lattice.coordinates(v))
            .collect::<Option<_>>()?;
        let extended = extend_to_basis(&coords, lattice.rank(), p).ok()?;
        for j in coords.len()..lattice.rank() {
            vectors.push(basis.mul_vec(&extended.column(j)));
            levels.push(i);
        }
    }
    if vectors.len() != d {
        return None;
    }

    let mut columns = Vec::with_capacity(d);
    for (e, &s) in vectors.iter().zip(&levels) {
        let c = &filt.stages[s as usize].c;
        let y = solve_p_integral(&c.eval_at_p(p), e, p)?;
        columns.push((c * &QMat::from_columns(d, &[y])).column(0));
    }
    let ab = AdaptedBasis {
        basis: PolyMat::from_columns(d, &columns),
        levels,
    };
    verify_adapted(&ab, filt).holds.then_some(ab)
}

/// Compares the predicted bases with the filtration at `i = 0, ..., h + 1`.
pub fn verify_adapted(ab: &AdaptedBasis, filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    let top = filt
        .height()
        .map_or(filt.i_max(), |h| (h + 1).min(filt.i_max()));
    let mut violations = Vec::new();
    for stage in &filt.stages[..=top as usize] {
        let predicted = ab.stage_basis(stage.i, p);
        match module_equal(&predicted, &stage.c, p) {
            Ok(true) => {}
            Ok(false) => violations.push(violation(
                stage.i,
                format!("span differs from Fil^{}", stage.i),
            )),
            Err(e) => violations.push(violation(stage.i, format!("{e}"))),
        }
    }
    CheckReport::new(ADAPTED, violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::graded::{graded_report, hodge_tate_weights};
    use crate::bkcore::{nygaard_filtration, BKModule};
    use crate::exactring::Prime;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn hand() -> Filtration {
        let pr = p(2);
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        nygaard_filtration(&BKModule::new(pr, b, None).unwrap(), None).unwrap()
    }

    #[test]
    fn hand_example_adapted() {
        let f = hand();
        let report = graded_report(&f).unwrap();
        let wd = hodge_tate_weights(&report, 2, p(2)).unwrap();
        assert!(decide_adapted_basis(&report, &wd));
        let ab = construct_adapted_basis(&f).unwrap();
        assert_eq!(ab.levels, vec![3, 0]);
        assert_eq!(ab.basis, PolyMat::identity(2));

        let sat = saturation_profile(&f);
        assert!(sat.in_m.iter().all(|&b| b));
        assert!(sat.stepwise.iter().all(|&b| b));
    }

    #[test]
    fn perturbed_levels_fail() {
        let f = hand();
        let ab = construct_adapted_basis(&f).unwrap();
        let mut bumped = ab.clone();
        bumped.levels[0] += 1;
        let r = verify_adapted(&bumped, &f);
        assert!(!r.holds);
        assert_eq!(r.violations[0].level, Some(4));
    }

    #[test]
    fn diagonal_and_rank_one() {
        let pr = p(2);
        let m = BKModule::new(
            pr,
            PolyMat::diagonal(vec![PolyU::one(), PolyU::e_power(pr, 4)]),
            None,
        )
        .unwrap();
        let f = nygaard_filtration(&m, None).unwrap();
        let ab = construct_adapted_basis(&f).unwrap();
        let mut levels = ab.levels.clone();
        levels.sort_unstable();
        assert_eq!(levels, vec![0, 4]);
        let zero_levels = AdaptedBasis {
            basis: PolyMat::identity(2),
            levels: vec![0, 0],
        };
        assert_eq!(
            verify_adapted(&zero_levels, &f).violations[0].level,
            Some(1)
        );

        let pr = p(5);
        let m = BKModule::new(pr, PolyMat::diagonal(vec![PolyU::e_power(pr, 3)]), None).unwrap();
        let ab = construct_adapted_basis(&nygaard_filtration(&m, None).unwrap()).unwrap();
        assert_eq!(ab.levels, vec![3]);
        assert_eq!(ab.basis, PolyMat::identity(1));
    }
}
