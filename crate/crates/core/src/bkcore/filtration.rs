use alloc::format;
use alloc::vec::Vec;

use super::equality::module_equal;
use super::module::BKModule;
use super::polymat::PolyMat;
use crate::exactring::PolyU;
use crate::plattice::{extend_to_basis, saturated_kernel, PLattice};
use crate::{Error, Result};

/// An 𝔖-basis `C` of `Fil^i` of the Frobenius pullback, with
/// `det C = unit * E^kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltStage {
    pub i: u32,
    pub c: PolyMat,
    pub kappa: u32,
    /// Rank of the saturated kernel used to build the next stage; `None` on
    /// the last stage computed.
    pub kernel_rank: Option<usize>,
}

impl FiltStage {
    pub fn initial(d: usize) -> Self {
        FiltStage {
            i: 0,
            c: PolyMat::identity(d),
            kappa: 0,
            kernel_rank: None,
        }
    }
}

/// The stages `Fil^0, ..., Fil^{i_max}` of the Nygaard filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub module: BKModule,
    pub stages: Vec<FiltStage>,
    h: Option<u32>,
}

impl Filtration {
    /// Largest level with `ev_p(Fil^i) != 0`, when the computed range
    /// reaches a zero image.
    pub fn height(&self) -> Option<u32> {
        self.h
    }

    pub fn stage(&self, i: u32) -> Option<&FiltStage> {
        self.stages.get(i as usize)
    }

    pub fn i_max(&self) -> u32 {
        self.stages.len() as u32 - 1
    }
}

/// One step of the filtration: from a basis of `Fil^i` to one of `Fil^{i+1}`.
///
/// With `A' = B C_i / E^i` and `V = A'(p)`, the saturated kernel `K` of `V`
/// is completed to a basis `W` of `Z_(p)^d`, and the columns of `C_i W`
/// outside `K` are multiplied by `E`.
pub fn nygaard_step(m: &BKModule, stage: &FiltStage) -> Result<(FiltStage, usize)> {
    let p = m.prime();
    let d = m.rank();
    let image = m.frobenius() * &stage.c;
    let reduced = image.div_e_power(p, stage.i).map_err(|e| {
        Error::Internal(format!(
            "stage {} is not inside Fil^{}: {e}",
            stage.i, stage.i
        ))
    })?;
    let v = reduced.eval_at_p(p);
    let kernel = saturated_kernel(&v, p);
    // Canonical basis of the kernel lattice keeps the output reproducible.
    let kernel = PLattice::new(p, d, kernel)?.basis().to_vec();
    let r = kernel.len();
    let w = extend_to_basis(&kernel, d, p)
        .map_err(|e| Error::Internal(format!("kernel is not extendable: {e}")))?;
    let mut c = &stage.c * &w;
    let e = PolyU::eisenstein(p);
    for j in r..d {
        c.scale_col(j, &e);
    }
    c.normalize_columns(p);
    let next = FiltStage {
        i: stage.i + 1,
        c,
        kappa: stage.kappa + (d - r) as u32,
        kernel_rank: None,
    };
    Ok((next, r))
}

/// Computes the stages `0..=i_max`.
///
/// Without an explicit `i_max` the recursion stops at the first level whose
/// image under `ev_p` vanishes, which is `h + 1`; it then checks that the
/// last stage equals `E` times the previous one. An explicit `i_max` is
/// capped at `4 d max(k, 1)`.
pub fn nygaard_filtration(m: &BKModule, i_max: Option<u32>) -> Result<Filtration> {
    let p = m.prime();
    let d = m.rank();
    let k = m.det_exponent();
    let cap = 4 * d as u32 * k.max(1);
    let limit = i_max.map_or(k + 1, |n| n.min(cap));
    let mut stages = alloc::vec![FiltStage::initial(d)];
    let mut h = None;
    loop {
        let last = stages.last().expect("nonempty");
        if h.is_none() && last.c.eval_at_p(p).is_zero() {
            h = Some(
                last.i
                    .checked_sub(1)
                    .ok_or_else(|| Error::Internal("Fil^0 has zero image under ev_p".into()))?,
            );
            if i_max.is_none() {
                break;
            }
        }
        if last.i >= limit {
            break;
        }
        let (next, r) = nygaard_step(m, last)?;
        stages.last_mut().expect("nonempty").kernel_rank = Some(r);
        stages.push(next);
    }
    let Some(h) = h else {
        if i_max.is_none() {
            return Err(Error::StabilizationFailure(format!(
                "ev_p(Fil^{}) is nonzero although det B has E-exponent {k}",
                k + 1
            )));
        }
        return Ok(Filtration {
            module: m.clone(),
            stages,
            h: None,
        });
    };
    if stages.len() as u32 > h + 1 {
        let top = &stages[h as usize + 1].c;
        let prev = stages[h as usize].c.mul_e_power(p, 1);
        if !module_equal(top, &prev, p)? {
            return Err(Error::StabilizationFailure(format!(
                "Fil^{} != E Fil^{h}",
                h + 1
            )));
        }
    }
    Ok(Filtration {
        module: m.clone(),
        stages,
        h: Some(h),
    })
}

/// `Fil^i M`, the lattice spanned by the columns of `C_i` at `u = p`.
pub fn evp_image(stage: &FiltStage, m: &BKModule) -> PLattice {
    PLattice::from_columns(m.prime(), &stage.c.eval_at_p(m.prime()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::Prime;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn hand() -> BKModule {
        let pr = p(2);
        let b = PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ]);
        BKModule::new(pr, b, None).unwrap()
    }

    fn diag_e(pr: Prime, a: u32, b: u32) -> PolyMat {
        PolyMat::diagonal(vec![PolyU::e_power(pr, a), PolyU::e_power(pr, b)])
    }

    #[test]
    fn hand_example_chain() {
        let m = hand();
        let f = nygaard_filtration(&m, None).unwrap();
        let pr = p(2);
        let expected = [
            diag_e(pr, 0, 0),
            diag_e(pr, 0, 1),
            diag_e(pr, 0, 2),
            diag_e(pr, 0, 3),
            diag_e(pr, 1, 4),
        ];
        assert_eq!(f.stages.len(), 5);
        for (s, want) in f.stages.iter().zip(&expected) {
            assert_eq!(&s.c, want, "stage {}", s.i);
        }
        assert_eq!(f.height(), Some(3));
        assert_eq!(
            f.stages.iter().map(|s| s.kappa).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 5]
        );
    }

    #[test]
    fn single_steps() {
        let m = hand();
        let (s1, r) = nygaard_step(&m, &FiltStage::initial(2)).unwrap();
        assert_eq!(r, 1);
        assert_eq!(s1.c, diag_e(p(2), 0, 1));
        let s3 = FiltStage {
            i: 3,
            c: diag_e(p(2), 0, 3),
            kappa: 3,
            kernel_rank: None,
        };
        let (s4, r) = nygaard_step(&m, &s3).unwrap();
        assert_eq!(r, 0);
        assert_eq!(s4.c, s3.c.mul_e_power(p(2), 1));
    }

    #[test]
    fn rank_one_twists() {
        for (pn, r) in [(2, 0), (3, 2), (5, 4), (2, 6)] {
            let pr = p(pn);
            let m =
                BKModule::new(pr, PolyMat::diagonal(vec![PolyU::e_power(pr, r)]), None).unwrap();
            let f = nygaard_filtration(&m, Some(r + 3)).unwrap();
            for s in &f.stages {
                assert_eq!(s.c[(0, 0)], PolyU::e_power(pr, s.i.saturating_sub(r)));
            }
            assert_eq!(f.height(), Some(r));
        }
    }

    #[test]
    fn diagonal_example() {
        let pr = p(2);
        let m = BKModule::new(pr, diag_e(pr, 0, 4), None).unwrap();
        let f = nygaard_filtration(&m, None).unwrap();
        assert_eq!(f.i_max(), 5);
        for s in &f.stages {
            // Kernel columns come first, so compare spans rather than matrices.
            let want = diag_e(pr, s.i, s.i.saturating_sub(4));
            assert_eq!(module_equal(&s.c, &want, pr), Ok(true), "stage {}", s.i);
        }
    }

    #[test]
    fn evp_images() {
        let m = hand();
        let f = nygaard_filtration(&m, None).unwrap();
        let pr = p(2);
        assert_eq!(evp_image(&f.stages[0], &m), PLattice::standard(pr, 2));
        let line = PLattice::new(
            pr,
            2,
            vec![vec![crate::exactring::int_q(1), crate::exactring::int_q(0)]],
        )
        .unwrap();
        for i in 1..=3 {
            assert_eq!(evp_image(&f.stages[i], &m), line);
        }
        assert!(evp_image(&f.stages[4], &m).is_zero_lattice());
    }
}
