//! Built-in example modules.
//!
//! Entries marked `certified` come from crystalline representations by
//! construction: rank-one twists, diagonal `diag(E^{r_j})`, and their
//! constant twists. On those, the monitored statements must hold.

use nygaard_core::bkcore::{BKModule, PolyMat};
use nygaard_core::exactring::Prime;
use nygaard_core::plattice::QMat;

use crate::generate::{generate, lambda, GeneratorConfig, SearchMode};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub certified: bool,
    pub module: BKModule,
}

const PRIMES: [u64; 3] = [2, 3, 5];

const DIAGONAL_PROFILES: [&[u32]; 10] = [
    &[0, 1],
    &[0, 2],
    &[0, 3],
    &[1, 4],
    &[0, 6],
    &[3, 3],
    &[0, 1, 2],
    &[0, 2, 5],
    &[1, 3, 6],
    &[0, 0, 4],
];

const TWIST_PROFILES: [&[u32]; 4] = [&[0, 3], &[2, 5], &[0, 2, 4], &[1, 1, 6]];

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("catalog primes are prime")
}

fn profile_name(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

fn module(p: u64, b: PolyMat, name: &str) -> BKModule {
    BKModule::new(prime(p), b, Some(name.to_string())).expect("catalog modules are valid")
}

/// Fixed unimodular integer matrices used for the constant twists.
fn twist_pair(d: usize) -> (QMat, QMat) {
    match d {
        2 => (
            QMat::from_ints(&[&[2, 1], &[1, 1]]),
            QMat::from_ints(&[&[1, 0], &[3, 1]]),
        ),
        _ => (
            QMat::from_ints(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]),
            QMat::from_ints(&[&[1, 0, 0], &[2, 1, 0], &[1, 1, 1]]),
        ),
    }
}

fn upper(p: u64, entries: &[&[&str]]) -> PolyMat {
    PolyMat::from_rows(
        entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        nygaard_core::exactring::parse_poly(s, prime(p))
                            .expect("catalog entry parses")
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The search configuration whose sample is pinned as a torsion instance.
pub fn pinned_torsion_config(p: u64) -> GeneratorConfig {
    GeneratorConfig {
        p,
        rank: 2,
        weights: vec![p as u32, 1],
        deg: 1,
        height: 2,
        mode: SearchMode::Extension,
    }
}

/// `(p, seed, index)` of torsion instances found by the extension search.
pub const PINNED_TORSION: [(u64, u64, u64); 2] = [(2, 2024, 0), (3, 2024, 4)];

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for p in PRIMES {
        for r in 0..=6u32 {
            let name = format!("twist-p{p}-r{r}");
            out.push(CatalogEntry {
                description: format!("rank-one twist B = (E^{r}), p = {p}"),
                certified: true,
                module: module(p, lambda(prime(p), &[r]), &name),
                name,
            });
        }
    }
    for p in PRIMES {
        for w in DIAGONAL_PROFILES {
            let name = format!("diag-p{p}-{}", profile_name(w));
            out.push(CatalogEntry {
                description: format!("diagonal B = diag(E^r) with r = {w:?}, p = {p}"),
                certified: true,
                module: module(p, lambda(prime(p), w), &name),
                name,
            });
        }
    }
    for p in PRIMES {
        for w in TWIST_PROFILES {
            let (a, q) = twist_pair(w.len());
            let b = &(&PolyMat::from_qmat(&a) * &lambda(prime(p), w)) * &PolyMat::from_qmat(&q);
            let name = format!("ctwist-p{p}-{}", profile_name(w));
            out.push(CatalogEntry {
                description: format!("constant twist B = A diag(E^r) P with r = {w:?}, p = {p}"),
                certified: true,
                module: module(p, b, &name),
                name,
            });
            let inv = a.inverse().expect("unimodular");
            let b = &(&PolyMat::from_qmat(&inv) * &lambda(prime(p), w)) * &PolyMat::from_qmat(&a);
            let name = format!("cob-p{p}-{}", profile_name(w));
            out.push(CatalogEntry {
                description: format!(
                    "constant change of basis A^-1 diag(E^r) A with r = {w:?}, p = {p}"
                ),
                certified: true,
                module: module(p, b, &name),
                name,
            });
        }
    }
    out.push(CatalogEntry {
        name: "hand".into(),
        description: "B = [[E^3, u], [0, 1]], p = 2: weights {0, 3}, no torsion".into(),
        certified: false,
        module: module(2, upper(2, &[&["E^3", "u"], &["0", "1"]]), "hand"),
    });
    for (p, seed, index) in PINNED_TORSION {
        let m = generate(&pinned_torsion_config(p), seed, index).expect("pinned sample is valid");
        let name = format!("torsion-p{p}");
        out.push(CatalogEntry {
            description: format!(
                "extension search sample (seed {seed}, index {index}), p = {p}: torsion in gr^{p}"
            ),
            certified: false,
            module: m.with_name(name.clone()),
            name,
        });
    }
    out.push(CatalogEntry {
        name: "counter-p2".into(),
        description: "B = [[E, 2], [0, E^2]], p = 2: torsion in gr^1, outside the strict set; \
                      not crystalline-certified"
            .into(),
        certified: false,
        module: module(2, upper(2, &[&["E", "2"], &["0", "E^2"]]), "counter-p2"),
    });
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
