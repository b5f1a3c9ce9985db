use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::divisors::GKData;
use super::graded::{GradedPiece, WeightData};

/// One failed instance of a predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub level: Option<u32>,
    pub evidence: String,
}

/// Outcome of one predicate; `holds` iff there are no violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub predicate: &'static str,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(predicate: &'static str, violations: Vec<Violation>) -> Self {
        CheckReport {
            predicate,
            holds: violations.is_empty(),
            violations,
        }
    }

    pub fn passed(predicate: &'static str) -> Self {
        Self::new(predicate, Vec::new())
    }
}

pub(crate) fn violation(level: impl Into<Option<u32>>, evidence: String) -> Violation {
    Violation {
        level: level.into(),
        evidence,
    }
}

pub const THM1: &str = "thm1";
pub const THM1_REFINED: &str = "thm1-refined";
pub const GEE_KISIN: &str = "gee-kisin";
pub const WEIGHTS: &str = "weight-cross-check";

/// Torsion may only occur at levels `r_j + m p` with `m > 0`.
pub fn check_thm1(report: &[GradedPiece], wd: &WeightData) -> CheckReport {
    let violations = report
        .iter()
        .filter(|g| g.has_torsion() && !wd.j_strict.contains(&g.i))
        .map(|g| {
            violation(
                g.i,
                format!(
                    "torsion exponents {:?} outside {:?}",
                    g.torsion, wd.j_strict
                ),
            )
        })
        .collect();
    CheckReport::new(THM1, violations)
}

/// `gr^i M = 0` off `J`, and `gr^i M` is torsion-free on `J` minus the
/// strict set.
pub fn check_thm1_refined(report: &[GradedPiece], wd: &WeightData) -> CheckReport {
    let mut violations = Vec::new();
    for g in report {
        if !wd.j_set.contains(&g.i) && !g.is_zero() {
            violations.push(violation(
                g.i,
                format!(
                    "nonzero graded piece (free {}, torsion {:?}) outside J",
                    g.free_rank, g.torsion
                ),
            ));
        } else if wd.j_set.contains(&g.i) && !wd.j_strict.contains(&g.i) && g.has_torsion() {
            violations.push(violation(
                g.i,
                format!("torsion {:?} at a level of J with m = 0 only", g.torsion),
            ));
        }
    }
    CheckReport::new(THM1_REFINED, violations)
}

/// `{a_j mod p} = {r_j mod p}` as multisets, and `a_j <= h`.
pub fn check_gee_kisin(gk: &GKData, wd: &WeightData) -> CheckReport {
    let p = wd.p.get() as u32;
    let mut weight_residues: Vec<u32> = wd.weights.iter().map(|r| r % p).collect();
    weight_residues.sort_unstable();
    let mut violations = Vec::new();
    if weight_residues != gk.residues {
        violations.push(violation(
            None,
            format!(
                "residues of a {:?} differ from residues of weights {:?}",
                gk.residues, weight_residues
            ),
        ));
    }
    for &a in gk.a.iter().filter(|&&a| a > wd.h) {
        violations.push(violation(None, format!("a_j = {a} exceeds h = {}", wd.h)));
    }
    CheckReport::new(GEE_KISIN, violations)
}

/// The filtration weights agree with the E-adic divisors of `B`, and both
/// sum to the E-exponent of `det B`.
pub fn check_weight_consistency(
    wd: &WeightData,
    e_divisors: &[u32],
    det_exponent: u32,
) -> CheckReport {
    let mut violations = Vec::new();
    if wd.weights != e_divisors {
        violations.push(violation(
            None,
            format!(
                "weights {:?} but E-adic divisors {:?}",
                wd.weights, e_divisors
            ),
        ));
    }
    let sum: u32 = wd.weights.iter().sum();
    if sum != det_exponent {
        violations.push(violation(
            None,
            format!("weights sum to {sum}, det exponent is {det_exponent}"),
        ));
    }
    CheckReport::new(WEIGHTS, violations)
}
