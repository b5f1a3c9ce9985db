use std::collections::BTreeMap;

use nygaard_core::analysis::{analyze, AnalysisOptions, THM1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::generate::{generate, GeneratorConfig};
use crate::spec::ModuleSpecFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(flatten)]
    pub generator: GeneratorConfig,
    pub count: u64,
    pub seed: u64,
    /// Worker threads; does not affect the result.
    #[serde(skip)]
    pub workers: usize,
}

/// A generated module whose graded pieces have torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub seed: u64,
    pub index: u64,
    pub spec: ModuleSpecFile,
    pub weights: Vec<u32>,
    pub j_strict: Vec<u32>,
    /// Level and torsion exponents of each graded piece with torsion.
    pub torsion: Vec<(u32, Vec<u32>)>,
    pub verdicts: BTreeMap<String, bool>,
    /// Torsion outside the strict set: either a counterexample or, far more
    /// likely, a non-crystalline input.
    pub counter_candidate: bool,
}

impl Finding {
    pub fn torsion_levels(&self) -> Vec<u32> {
        self.torsion.iter().map(|(i, _)| *i).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub generated: u64,
    /// Findings whose torsion lies in the strict set.
    pub findings: Vec<Finding>,
    pub counter_candidates: Vec<Finding>,
    /// Count of samples per computed weight multiset.
    pub weight_histogram: BTreeMap<String, u64>,
}

/// A per-sample failure that aborts the search.
#[derive(Debug)]
pub struct SearchFailure {
    pub index: u64,
    pub error: nygaard_core::Error,
}

enum Sample {
    Clean(Vec<u32>),
    Torsion(Finding),
}

fn run_one(cfg: &SearchConfig, index: u64) -> Result<Sample, SearchFailure> {
    let fail = |error| SearchFailure { index, error };
    let m = generate(&cfg.generator, cfg.seed, index).map_err(fail)?;
    let a = analyze(&m, AnalysisOptions::minimal()).map_err(fail)?;
    let weights = a.weights.weights.clone();
    if a.torsion_levels().is_empty() {
        return Ok(Sample::Clean(weights));
    }
    let verdicts = a
        .checks
        .iter()
        .map(|c| (c.predicate.to_string(), c.holds))
        .collect();
    Ok(Sample::Torsion(Finding {
        seed: cfg.seed,
        index,
        spec: ModuleSpecFile::from_module(&m),
        weights,
        j_strict: a.weights.j_strict.iter().copied().collect(),
        torsion: a
            .graded
            .iter()
            .filter(|g| g.has_torsion())
            .map(|g| (g.i, g.torsion.clone()))
            .collect(),
        counter_candidate: !a.check(THM1).is_some_and(|c| c.holds),
        verdicts,
    }))
}

fn weight_key(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Generates and analyzes `count` samples. The result depends only on the
/// configuration and seed; samples are processed in parallel and collected
/// by index.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome, SearchFailure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    let samples: Vec<Result<Sample, SearchFailure>> = pool.install(|| {
        (0..cfg.count)
            .into_par_iter()
            .map(|i| run_one(cfg, i))
            .collect()
    });

    let mut outcome = SearchOutcome {
        config: cfg.clone(),
        generated: cfg.count,
        findings: Vec::new(),
        counter_candidates: Vec::new(),
        weight_histogram: BTreeMap::new(),
    };
    for sample in samples {
        let (weights, finding) = match sample? {
            Sample::Clean(w) => (w, None),
            Sample::Torsion(f) => (f.weights.clone(), Some(f)),
        };
        *outcome
            .weight_histogram
            .entry(weight_key(&weights))
            .or_default() += 1;
        match finding {
            Some(f) if f.counter_candidate => outcome.counter_candidates.push(f),
            Some(f) => outcome.findings.push(f),
            None => {}
        }
    }
    Ok(outcome)
}
