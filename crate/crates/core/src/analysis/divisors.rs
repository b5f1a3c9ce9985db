use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::series::{elementary_divisors, Fp};
use crate::bkcore::{BKModule, PolyMat};
use crate::exactring::{PolyU, Prime, Q};
use crate::{Error, Result};

/// Mod-p elementary divisor data: `B mod p = X diag(u^{a_j}) Y` over
/// `F_p[[u]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKData {
    /// Ascending.
    pub a: Vec<u32>,
    /// `a_j mod p`, ascending.
    pub residues: Vec<u32>,
}

/// Exponents `δ_1, ..., δ_d` of the gcds of `s x s` minors, measured by
/// `val`, computed by cofactor expansion.
fn minor_valuations(b: &PolyMat, val: impl Fn(&PolyU) -> Option<u32>) -> Vec<Option<u32>> {
    let d = b.rows();
    (1..=d)
        .map(|s| {
            let mut best: Option<u32> = None;
            for rows in subsets(d, s) {
                for cols in subsets(d, s) {
                    let minor = b.submatrix(&rows, &cols).laplace_det();
                    if let Some(v) = val(&minor) {
                        best = Some(best.map_or(v, |b| b.min(v)));
                    }
                }
            }
            best
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Divisors from successive differences of minor valuations.
fn divisors_from_minors(deltas: &[Option<u32>]) -> Option<Vec<u32>> {
    let mut prev = 0;
    let mut out = Vec::with_capacity(deltas.len());
    for delta in deltas {
        let delta = (*delta)?;
        out.push(delta.checked_sub(prev)?);
        prev = delta;
    }
    out.sort_unstable();
    Some(out)
}

/// Elementary divisors of `b` over the localization of `Q[u]` at `E`, by
/// pivoting on truncated E-adic expansions, cross-checked against minors.
pub fn e_adic_divisors(b: &PolyMat, p: Prime) -> Result<Vec<u32>> {
    let k = b.det().e_valuation(p).ok_or(Error::ZeroDeterminant)?;
    let n = k as usize + 1;
    let rows = (0..b.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    let mut s = b[(i, j)].e_expand(p);
                    s.resize(n, Q::zero());
                    s.truncate(n);
                    s
                })
                .collect()
        })
        .collect();
    let by_elimination = elementary_divisors::<Q>(rows, n)
        .ok_or_else(|| Error::Internal("E-adic elimination lost precision".into()))?;
    let by_minors = divisors_from_minors(&minor_valuations(b, |f| f.e_valuation(p)))
        .ok_or_else(|| Error::Internal("minor valuations are not increasing".into()))?;
    if by_elimination != by_minors {
        return Err(Error::InternalMismatch(format!(
            "E-adic divisors {by_elimination:?} by elimination, {by_minors:?} by minors"
        )));
    }
    Ok(by_elimination)
}

/// The multiset of E-adic elementary divisors of the Frobenius matrix.
pub fn hodge_invariants_at_e(m: &BKModule) -> Result<Vec<u32>> {
    e_adic_divisors(m.frobenius(), m.prime())
}

fn u_valuation_mod_p(f: &PolyU, p: Prime) -> Option<u32> {
    let coeffs = f.mod_p(p)?;
    coeffs.iter().position(|&c| c != 0).map(|v| v as u32)
}

/// Elementary divisors of `b mod p` over `F_p[[u]]`, by elimination and by
/// minor valuations.
pub fn gee_kisin_divisors(b: &PolyMat, p: Prime) -> Result<GKData> {
    let reduced = b.mod_p(p)?;
    let det_val = u_valuation_mod_p(&b.det(), p).ok_or(Error::SingularModP)?;
    let n = det_val as usize + 1;
    let pm = p.get();
    let d = b.cols();
    let rows = (0..b.rows())
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut s: Vec<Fp> = reduced[i * d + j]
                        .iter()
                        .map(|&v| Fp { v, p: pm })
                        .collect();
                    s.resize(n, Fp { v: 0, p: pm });
                    s.truncate(n);
                    s
                })
                .collect()
        })
        .collect();
    let by_elimination = elementary_divisors::<Fp>(rows, n)
        .ok_or_else(|| Error::Internal("mod-p elimination lost precision".into()))?;
    let by_minors = divisors_from_minors(&minor_valuations(b, |f| u_valuation_mod_p(f, p)))
        .ok_or(Error::SingularModP)?;
    if by_elimination != by_minors {
        return Err(Error::InternalMismatch(format!(
            "mod-p divisors {by_elimination:?} by elimination, {by_minors:?} by minors"
        )));
    }
    let mut residues: Vec<u32> = by_elimination.iter().map(|&a| a % pm as u32).collect();
    residues.sort_unstable();
    Ok(GKData {
        a: by_elimination,
        residues,
    })
}

pub fn gee_kisin_invariants(m: &BKModule) -> Result<GKData> {
    gee_kisin_divisors(m.frobenius(), m.prime())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn hand() -> PolyMat {
        let pr = p(2);
        PolyMat::from_rows(vec![
            vec![PolyU::e_power(pr, 3), PolyU::u()],
            vec![PolyU::zero(), PolyU::one()],
        ])
    }

    #[test]
    fn e_adic_examples() {
        assert_eq!(e_adic_divisors(&hand(), p(2)), Ok(vec![0, 3]));
        let pr = p(5);
        let d = PolyMat::diagonal(vec![
            PolyU::e_power(pr, 2),
            PolyU::e_power(pr, 0),
            PolyU::e_power(pr, 5),
        ]);
        assert_eq!(e_adic_divisors(&d, pr), Ok(vec![0, 2, 5]));
        // Off-diagonal E forces divisors (1, 1), not (0, 2).
        let pr = p(3);
        let e = PolyU::eisenstein(pr);
        let m = PolyMat::from_rows(vec![vec![e.clone(), e.clone()], vec![PolyU::zero(), e]]);
        assert_eq!(e_adic_divisors(&m, pr), Ok(vec![1, 1]));
    }

    #[test]
    fn gee_kisin_examples() {
        let pr = p(2);
        let d = PolyMat::diagonal(vec![PolyU::one(), PolyU::e_power(pr, 4)]);
        assert_eq!(gee_kisin_divisors(&d, pr).unwrap().a, vec![0, 4]);
        let gk = gee_kisin_divisors(&hand(), pr).unwrap();
        assert_eq!(gk.a, vec![0, 3]);
        assert_eq!(gk.residues, vec![0, 1]);
        let m = PolyMat::from_int_rows(&[&[&[0, 0, 1], &[0, 1]], &[&[0, 0, 0, 1], &[1]]]);
        assert_eq!(gee_kisin_divisors(&m, pr).unwrap().a, vec![0, 2]);
        let singular = PolyMat::from_int_rows(&[&[&[2]]]);
        assert_eq!(gee_kisin_divisors(&singular, pr), Err(Error::SingularModP));
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}
