//! Seeded random Frobenius matrices `B = X T Y`.
//!
//! `X` and `Y` are products of elementary matrices with polynomial entries
//! and a constant matrix invertible over `Z_(p)`, so `det B = unit * det T`.

use nygaard_core::bkcore::{BKModule, PolyMat};
use nygaard_core::exactring::{int_q, PolyU, Prime};
use nygaard_core::plattice::QMat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// `X diag(E^{r_j}) Y` with polynomial `X`, `Y`.
    All,
    /// `A diag(E^{r_j}) P` with constant `A`, `P`.
    ConstantTwist,
    /// `X T Y` where `T` is upper triangular with diagonal `E^{r_j}` and
    /// random polynomials above it.
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub p: u64,
    pub rank: usize,
    pub weights: Vec<u32>,
    pub deg: usize,
    pub height: i64,
    pub mode: SearchMode,
}

/// The generator stream for sample `index`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_poly(rng: &mut impl Rng, deg: usize, height: i64) -> PolyU {
    let coeffs: Vec<i64> = (0..=deg)
        .map(|_| rng.random_range(-height..=height))
        .collect();
    PolyU::from_ints(&coeffs)
}

/// A random `p`-unit in `[-height, height]`, or `1` if there is none.
fn random_unit(rng: &mut impl Rng, height: i64, p: u64) -> i64 {
    let units: Vec<i64> = (-height..=height)
        .filter(|x| x.rem_euclid(p as i64) != 0)
        .collect();
    if units.is_empty() {
        1
    } else {
        units[rng.random_range(0..units.len())]
    }
}

/// `L U P` with `L` unit lower triangular, `U` upper triangular with p-unit
/// diagonal, and `P` a permutation.
pub fn random_constant_gl(rng: &mut impl Rng, d: usize, height: i64, p: u64) -> QMat {
    let h = height.max(1);
    let mut lower = QMat::identity(d);
    let mut upper = QMat::identity(d);
    for i in 0..d {
        for j in 0..d {
            if i > j {
                lower[(i, j)] = int_q(rng.random_range(-h..=h));
            } else if i < j {
                upper[(i, j)] = int_q(rng.random_range(-h..=h));
            } else {
                upper[(i, i)] = int_q(random_unit(rng, h, p));
            }
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut pm = QMat::zeros(d, d);
    for (i, &j) in perm.iter().enumerate() {
        pm[(i, j)] = int_q(1);
    }
    &(&lower * &upper) * &pm
}

/// Product of `n ∈ [d, 3d]` elementary matrices `I + f e_ij` and a random
/// constant invertible matrix.
pub fn random_unimodular(rng: &mut impl Rng, d: usize, deg: usize, height: i64, p: u64) -> PolyMat {
    let mut m = PolyMat::from_qmat(&random_constant_gl(rng, d, height, p));
    if d < 2 {
        return m;
    }
    let n = rng.random_range(d..=3 * d);
    for _ in 0..n {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let mut elem = PolyMat::identity(d);
        elem[(i, j)] = random_poly(rng, deg, height);
        m = &m * &elem;
    }
    m
}

pub fn lambda(p: Prime, weights: &[u32]) -> PolyMat {
    PolyMat::diagonal(weights.iter().map(|&r| PolyU::e_power(p, r)).collect())
}

/// Sample `index` of the stream for `seed`.
pub fn generate(cfg: &GeneratorConfig, seed: u64, index: u64) -> nygaard_core::Result<BKModule> {
    let p = Prime::new(cfg.p)?;
    let d = cfg.rank;
    let mut rng = rng_for(seed, index);
    let mut middle = lambda(p, &cfg.weights);
    let b = match cfg.mode {
        SearchMode::All => {
            let x = random_unimodular(&mut rng, d, cfg.deg, cfg.height, cfg.p);
            let y = random_unimodular(&mut rng, d, cfg.deg, cfg.height, cfg.p);
            &(&x * &middle) * &y
        }
        SearchMode::ConstantTwist => {
            let a = PolyMat::from_qmat(&random_constant_gl(&mut rng, d, cfg.height, cfg.p));
            let q = PolyMat::from_qmat(&random_constant_gl(&mut rng, d, cfg.height, cfg.p));
            &(&a * &middle) * &q
        }
        SearchMode::Extension => {
            for i in 0..d {
                for j in i + 1..d {
                    middle[(i, j)] = random_poly(&mut rng, cfg.deg, cfg.height);
                }
            }
            let x = random_unimodular(&mut rng, d, cfg.deg, cfg.height, cfg.p);
            let y = random_unimodular(&mut rng, d, cfg.deg, cfg.height, cfg.p);
            &(&x * &middle) * &y
        }
    };
    BKModule::new(p, b, Some(format!("seed{seed}-{index}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nygaard_core::exactring::valuation;

    fn cfg(mode: SearchMode) -> GeneratorConfig {
        GeneratorConfig {
            p: 3,
            rank: 3,
            weights: vec![0, 2, 5],
            deg: 2,
            height: 3,
            mode,
        }
    }

    #[test]
    fn generated_modules_have_expected_height() {
        for mode in [
            SearchMode::All,
            SearchMode::ConstantTwist,
            SearchMode::Extension,
        ] {
            for index in 0..5 {
                let m = generate(&cfg(mode), 7, index).unwrap();
                assert_eq!(m.det_exponent(), 7);
            }
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let c = cfg(SearchMode::All);
        assert_eq!(generate(&c, 1, 4).unwrap(), generate(&c, 1, 4).unwrap());
        assert_ne!(
            generate(&c, 1, 4).unwrap().frobenius(),
            generate(&c, 1, 5).unwrap().frobenius()
        );
        assert_ne!(
            generate(&c, 2, 4).unwrap().frobenius(),
            generate(&c, 1, 4).unwrap().frobenius()
        );
    }

    #[test]
    fn constant_factors_are_invertible() {
        let p = Prime::new(2).unwrap();
        let mut rng = rng_for(0, 0);
        for _ in 0..50 {
            let a = random_constant_gl(&mut rng, 3, 2, 2);
            assert_eq!(valuation(&a.det(), p), Some(0));
        }
    }
}
