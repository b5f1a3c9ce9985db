use alloc::format;
use alloc::vec::Vec;

use super::checks::{violation, CheckReport, Violation};
use crate::bkcore::{
    e_multiple_model, free_basis_exponent, mod_em_lattice_model, module_contains, module_equal,
    nygaard_direct_oracle, Filtration,
};
use crate::plattice::{lattice_intersect, lattice_quotient};
use crate::Result;

pub const FREENESS: &str = "lemma-freeness";
pub const E_CONTAINMENT: &str = "lemma-e-containment";
pub const EXACT_SEQUENCE: &str = "lemma-exact-sequence";
pub const GRADED_FREE: &str = "lemma-graded-free";
pub const KAPPA: &str = "lemma-kappa";
pub const STABILIZATION: &str = "stabilization";
pub const ORACLE: &str = "oracle";

fn collect(
    predicate: &'static str,
    items: impl Iterator<Item = Result<Option<Violation>>>,
) -> CheckReport {
    let violations = items
        .filter_map(|r| match r {
            Ok(v) => v,
            Err(e) => Some(violation(None, format!("{e}"))),
        })
        .collect();
    CheckReport::new(predicate, violations)
}

/// `det C_i = unit * E^{kappa_i}`.
pub fn check_freeness(filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    collect(
        FREENESS,
        filt.stages.iter().map(|s| {
            let k = free_basis_exponent(&s.c, p)?;
            Ok((k != s.kappa)
                .then(|| violation(s.i, format!("det exponent {k}, kappa {}", s.kappa))))
        }),
    )
}

/// `E Fil^{i-1} ⊆ Fil^i`.
pub fn check_e_containment(filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    collect(
        E_CONTAINMENT,
        filt.stages.windows(2).map(|w| {
            let ok = module_contains(&w[1].c, &w[0].c.mul_e_power(p, 1), p)?;
            Ok((!ok).then(|| violation(w[1].i, "E Fil^{i-1} not contained".into())))
        }),
    )
}

/// `E 𝔐^* ∩ Fil^i = E Fil^{i-1}`, compared inside `(𝔖/E^{i+1})^d`.
pub fn check_exact_sequence(filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    let d = filt.module.rank();
    collect(
        EXACT_SEQUENCE,
        filt.stages.windows(2).map(|w| {
            let m = w[1].i as usize + 1;
            let fil = mod_em_lattice_model(&w[1].c, m, p)?;
            let lhs = lattice_intersect(&fil, &e_multiple_model(d, m, p))?;
            let rhs = mod_em_lattice_model(&w[0].c.mul_e_power(p, 1), m, p)?;
            Ok((lhs != rhs)
                .then(|| violation(w[1].i, format!("ranks {} vs {}", lhs.rank(), rhs.rank()))))
        }),
    )
}

/// `Fil^i / Fil^{i+1}` is a free `Z_(p)`-module, computed in
/// `(𝔖/E^{i+1})^d`.
pub fn check_graded_free(filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    collect(
        GRADED_FREE,
        filt.stages.windows(2).map(|w| {
            let m = w[1].i as usize;
            let q = lattice_quotient(
                &mod_em_lattice_model(&w[0].c, m, p)?,
                &mod_em_lattice_model(&w[1].c, m, p)?,
            )?;
            Ok((!q.torsion.is_empty())
                .then(|| violation(w[0].i, format!("torsion {:?}", q.torsion))))
        }),
    )
}

/// `kappa_{i+1} - kappa_i = d - rank K_i`.
pub fn check_kappa(filt: &Filtration) -> CheckReport {
    let d = filt.module.rank() as u32;
    collect(
        KAPPA,
        filt.stages.windows(2).map(|w| {
            let r = w[0].kernel_rank.unwrap_or(0) as u32;
            let jump = w[1].kappa - w[0].kappa;
            Ok((jump != d - r)
                .then(|| violation(w[0].i, format!("kappa jumps by {jump}, kernel rank {r}"))))
        }),
    )
}

/// `Fil^{h+1} = E Fil^h`.
pub fn check_stabilization(filt: &Filtration) -> CheckReport {
    let p = filt.module.prime();
    let Some(h) = filt.height() else {
        return CheckReport::new(
            STABILIZATION,
            alloc::vec![violation(None, "height not reached".into())],
        );
    };
    let (Some(top), Some(prev)) = (filt.stage(h + 1), filt.stage(h)) else {
        return CheckReport::new(
            STABILIZATION,
            alloc::vec![violation(h + 1, "stage not computed".into())],
        );
    };
    collect(
        STABILIZATION,
        core::iter::once(
            module_equal(&top.c, &prev.c.mul_e_power(p, 1), p)
                .map(|ok| (!ok).then(|| violation(h + 1, "Fil^{h+1} != E Fil^h".into()))),
        ),
    )
}

/// The direct kernel computation confirms every stage `i >= 1`.
pub fn check_oracle(filt: &Filtration) -> CheckReport {
    collect(
        ORACLE,
        filt.stages.iter().skip(1).map(|s| {
            let v = nygaard_direct_oracle(&filt.module, s.i, &s.c)?;
            Ok((!v.agrees).then(|| {
                violation(
                    s.i,
                    format!(
                        "kernel rank {}, candidate rank {}, contains E^i: {}",
                        v.kernel.rank(),
                        v.candidate.rank(),
                        v.contains_e_power
                    ),
                )
            }))
        }),
    )
}

/// Every structural check on the filtration except the oracle.
pub fn lemma_suite(filt: &Filtration) -> Vec<CheckReport> {
    alloc::vec![
        check_freeness(filt),
        check_e_containment(filt),
        check_exact_sequence(filt),
        check_graded_free(filt),
        check_kappa(filt),
        check_stabilization(filt),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bkcore::{nygaard_filtration, BKModule, PolyMat};
    use crate::exactring::{PolyU, Prime};
    use alloc::vec;

    #[test]
    fn hand_example_passes_everything() {
        let pr = Prime::new(2).unwrap();
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        let f = nygaard_filtration(&BKModule::new(pr, b, None).unwrap(), None).unwrap();
        for r in lemma_suite(&f) {
            assert!(r.holds, "{}: {:?}", r.predicate, r.violations);
        }
        assert!(check_oracle(&f).holds);
    }

    #[test]
    fn tampered_stage_is_caught() {
        let pr = Prime::new(3).unwrap();
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 2), PolyU::from_ints(&[3])],
            vec![PolyU::zero(), PolyU::eisenstein(pr)],
        ]);
        let mut f = nygaard_filtration(&BKModule::new(pr, b, None).unwrap(), None).unwrap();
        f.stages[2].c.scale_col(0, &PolyU::from_ints(&[3]));
        assert!(!check_oracle(&f).holds);
        assert!(!check_freeness(&f).holds);
    }
}
