//! Invariants of the integral filtration `Fil^i M = ev_p(Fil^i)` on
//! `M = ev_p(𝔐^*)`: graded torsion, Hodge–Tate weights, the sets `J` and
//! its strict part, Gee–Kisin invariants, and adapted bases.
//!
//! The torsion-index and Gee–Kisin statements assume a crystalline input,
//! which cannot be certified here; their checks are monitors and a failure
//! means "violation or non-crystalline input".

mod adapted;
mod checks;
mod divisors;
mod graded;
mod lemma;
mod series;

use alloc::format;
use alloc::vec::Vec;

pub use adapted::{
    construct_adapted_basis, decide_adapted_basis, saturation_profile, verify_adapted,
    AdaptedBasis, SaturationProfile, ADAPTED,
};
pub use checks::{
    check_gee_kisin, check_thm1, check_thm1_refined, check_weight_consistency, CheckReport,
    Violation, GEE_KISIN, THM1, THM1_REFINED, WEIGHTS,
};
pub use divisors::{
    e_adic_divisors, gee_kisin_divisors, gee_kisin_invariants, hodge_invariants_at_e, GKData,
};
pub use graded::{evp_chain, graded_report, hodge_tate_weights, GradedPiece, WeightData};
pub use lemma::{
    check_e_containment, check_exact_sequence, check_freeness, check_graded_free, check_kappa,
    check_oracle, check_stabilization, lemma_suite, EXACT_SEQUENCE, E_CONTAINMENT, FREENESS,
    GRADED_FREE, KAPPA, ORACLE, STABILIZATION,
};

use crate::bkcore::{nygaard_filtration, BKModule, Filtration};
use crate::Result;
use checks::violation;

pub const GRADED_RANKS: &str = "graded-ranks";
pub const SATURATION: &str = "saturation-consistency";

/// Which of the more expensive checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Extra stages beyond `h + 1`; smaller values are ignored.
    pub i_max: Option<u32>,
    pub lemmas: bool,
    pub oracle: bool,
    pub adapted: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            i_max: None,
            lemmas: true,
            oracle: false,
            adapted: true,
        }
    }
}

impl AnalysisOptions {
    /// Filtration, graded pieces and weights only.
    pub fn minimal() -> Self {
        AnalysisOptions {
            i_max: None,
            lemmas: false,
            oracle: false,
            adapted: false,
        }
    }

    pub fn full() -> Self {
        AnalysisOptions {
            i_max: None,
            lemmas: true,
            oracle: true,
            adapted: true,
        }
    }
}

/// Everything computed about one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub filtration: Filtration,
    pub graded: Vec<GradedPiece>,
    pub weights: WeightData,
    pub e_divisors: Vec<u32>,
    pub gee_kisin: GKData,
    pub saturation: SaturationProfile,
    pub adapted_exists: bool,
    /// `None` when not requested, not existing, or not verified.
    pub adapted: Option<AdaptedBasis>,
    pub checks: Vec<CheckReport>,
}

impl Analysis {
    pub fn h(&self) -> u32 {
        self.weights.h
    }

    /// Levels with nonzero torsion in the graded piece.
    pub fn torsion_levels(&self) -> Vec<u32> {
        self.graded
            .iter()
            .filter(|g| g.has_torsion())
            .map(|g| g.i)
            .collect()
    }

    pub fn check(&self, predicate: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.predicate == predicate)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Ranks of `Fil^i M` follow the weights, vanish above `h`, and torsion only
/// appears in `1..=h`.
fn check_graded_ranks(graded: &[GradedPiece], wd: &WeightData, d: usize) -> CheckReport {
    let mut violations = Vec::new();
    let mut rank = d;
    for g in graded {
        let expected = wd.d_table.get(g.i as usize).map_or(d, |&di| d - di);
        if rank != expected {
            violations.push(violation(
                g.i,
                format!("rank Fil^i M = {rank}, expected {expected}"),
            ));
        }
        rank -= g.free_rank;
        if g.has_torsion() && (g.i == 0 || g.i > wd.h) {
            violations.push(violation(
                g.i,
                format!("torsion {:?} outside 1..=h", g.torsion),
            ));
        }
    }
    if rank != 0 {
        violations.push(violation(None, format!("top stage has rank {rank}")));
    }
    CheckReport::new(GRADED_RANKS, violations)
}

/// Torsion in `gr^i M` exactly when `Fil^{i+1} M` is not saturated in
/// `Fil^i M`.
fn check_saturation(graded: &[GradedPiece], sat: &SaturationProfile) -> CheckReport {
    let violations = graded
        .iter()
        .filter_map(|g| {
            let saturated = sat.stepwise.get(g.i as usize + 1).copied().unwrap_or(true);
            (g.has_torsion() == saturated).then(|| {
                violation(
                    g.i,
                    format!(
                        "torsion {:?} but next stage saturated: {saturated}",
                        g.torsion
                    ),
                )
            })
        })
        .collect();
    CheckReport::new(SATURATION, violations)
}

/// Runs the filtration and every invariant on `m`.
pub fn analyze(m: &BKModule, opts: AnalysisOptions) -> Result<Analysis> {
    let mut filtration = nygaard_filtration(m, None)?;
    if let Some(n) = opts.i_max.filter(|&n| n > filtration.i_max()) {
        filtration = nygaard_filtration(m, Some(n))?;
    }
    let p = m.prime();
    let d = m.rank();
    let graded = graded_report(&filtration)?;
    let weights = hodge_tate_weights(&graded, d, p)?;
    let e_divisors = hodge_invariants_at_e(m)?;
    let gee_kisin = gee_kisin_invariants(m)?;
    let saturation = saturation_profile(&filtration);
    let adapted_exists = decide_adapted_basis(&graded, &weights);

    let mut checks = alloc::vec![
        check_thm1(&graded, &weights),
        check_thm1_refined(&graded, &weights),
        check_gee_kisin(&gee_kisin, &weights),
        check_weight_consistency(&weights, &e_divisors, m.det_exponent()),
        check_graded_ranks(&graded, &weights, d),
        check_saturation(&graded, &saturation),
    ];

    let mut adapted = None;
    if opts.adapted && adapted_exists {
        adapted = construct_adapted_basis(&filtration);
        let violations = if adapted.is_some() {
            Vec::new()
        } else {
            alloc::vec![violation(
                None,
                "no torsion below h but construction is unknown".into()
            )]
        };
        checks.push(CheckReport::new(ADAPTED, violations));
    }
    if opts.lemmas {
        checks.extend(lemma_suite(&filtration));
    }
    if opts.oracle {
        checks.push(check_oracle(&filtration));
    }

    Ok(Analysis {
        filtration,
        graded,
        weights,
        e_divisors,
        gee_kisin,
        saturation,
        adapted_exists,
        adapted,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bkcore::PolyMat;
    use crate::exactring::{PolyU, Prime};
    use alloc::vec;

    #[test]
    fn hand_example_full() {
        let pr = Prime::new(2).unwrap();
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        let a = analyze(
            &BKModule::new(pr, b, None).unwrap(),
            AnalysisOptions::full(),
        )
        .unwrap();
        assert!(a.all_hold(), "{:?}", a.checks);
        assert_eq!(a.weights.weights, vec![0, 3]);
        assert_eq!(a.gee_kisin.a, vec![0, 3]);
        assert_eq!(a.adapted.unwrap().levels, vec![3, 0]);
    }

    #[test]
    fn torsion_example() {
        // [[E^2, 2], [0, E]] at p = 2: weights {0, 3} and torsion at level 2.
        let pr = Prime::new(2).unwrap();
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 2), PolyU::from_ints(&[2])],
            vec![PolyU::zero(), PolyU::eisenstein(pr)],
        ]);
        let a = analyze(
            &BKModule::new(pr, b, None).unwrap(),
            AnalysisOptions::full(),
        )
        .unwrap();
        assert_eq!(a.weights.weights, vec![0, 3]);
        assert_eq!(a.torsion_levels(), vec![2]);
        assert!(a.check(THM1).unwrap().holds);
        assert!(!a.adapted_exists);
        assert!(a.adapted.is_none());
        assert!(!a.saturation.in_m[3]);
        for c in &a.checks {
            assert!(c.holds, "{}: {:?}", c.predicate, c.violations);
        }
    }
}
