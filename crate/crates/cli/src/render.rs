//! Text and JSON reports.

use std::fmt::Write as _;

use nygaard_core::analysis::{Analysis, CheckReport, ADAPTED, GEE_KISIN, THM1, THM1_REFINED};
use nygaard_core::exactring::Q;
use nygaard_core::plattice::PLattice;
use serde::Serialize;

use crate::spec::ModuleSpecFile;

pub const SCHEMA_VERSION: &str = "nygaard-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Predicates that presuppose a crystalline input. Their violations mean
/// "violation or non-crystalline input"; every other check is an internal
/// invariant.
pub fn is_monitor(predicate: &str) -> bool {
    [THM1, THM1_REFINED, GEE_KISIN, ADAPTED].contains(&predicate)
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input: ModuleSpecFile,
    pub det_exponent: u32,
    pub stages: Vec<StageDoc>,
    pub graded: Vec<GradedDoc>,
    pub weights: Vec<u32>,
    pub h: u32,
    pub d_table: Vec<usize>,
    pub j: Vec<u32>,
    pub j_strict: Vec<u32>,
    pub e_divisors: Vec<u32>,
    pub gee_kisin: GeeKisinDoc,
    pub saturated_in_m: Vec<bool>,
    pub saturated_stepwise: Vec<bool>,
    pub adapted: AdaptedDoc,
    pub checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
pub struct StageDoc {
    pub i: u32,
    pub kappa: u32,
    /// Row-major entries written in powers of `E`.
    pub basis: Vec<Vec<String>>,
    /// Canonical basis of `Fil^i M`.
    pub lattice: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct GradedDoc {
    pub i: u32,
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

#[derive(Serialize)]
pub struct GeeKisinDoc {
    pub a: Vec<u32>,
    pub residues: Vec<u32>,
}

#[derive(Serialize)]
pub struct AdaptedDoc {
    pub exists: bool,
    pub levels: Option<Vec<u32>>,
    pub basis: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub predicate: &'static str,
    pub monitor: bool,
    pub holds: bool,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Serialize)]
pub struct ViolationDoc {
    pub level: Option<u32>,
    pub evidence: String,
}

fn vector_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(Q::to_string).collect()
}

fn lattice_strings(l: &PLattice) -> Vec<Vec<String>> {
    l.basis().iter().map(|v| vector_strings(v)).collect()
}

pub fn check_doc(c: &CheckReport) -> CheckDoc {
    CheckDoc {
        predicate: c.predicate,
        monitor: is_monitor(c.predicate),
        holds: c.holds,
        violations: c
            .violations
            .iter()
            .map(|v| ViolationDoc {
                level: v.level,
                evidence: v.evidence.clone(),
            })
            .collect(),
    }
}

pub fn report_doc(a: &Analysis) -> ReportDoc {
    let m = &a.filtration.module;
    let p = m.prime();
    let chain = nygaard_core::analysis::evp_chain(&a.filtration);
    ReportDoc {
        schema: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        input: ModuleSpecFile::from_module(m),
        det_exponent: m.det_exponent(),
        stages: a
            .filtration
            .stages
            .iter()
            .zip(&chain)
            .map(|(s, l)| StageDoc {
                i: s.i,
                kappa: s.kappa,
                basis: s.c.display_in_e(p),
                lattice: lattice_strings(l),
            })
            .collect(),
        graded: a
            .graded
            .iter()
            .map(|g| GradedDoc {
                i: g.i,
                free_rank: g.free_rank,
                torsion: g.torsion.clone(),
            })
            .collect(),
        weights: a.weights.weights.clone(),
        h: a.weights.h,
        d_table: a.weights.d_table.clone(),
        j: a.weights.j_set.iter().copied().collect(),
        j_strict: a.weights.j_strict.iter().copied().collect(),
        e_divisors: a.e_divisors.clone(),
        gee_kisin: GeeKisinDoc {
            a: a.gee_kisin.a.clone(),
            residues: a.gee_kisin.residues.clone(),
        },
        saturated_in_m: a.saturation.in_m.clone(),
        saturated_stepwise: a.saturation.stepwise.clone(),
        adapted: AdaptedDoc {
            exists: a.adapted_exists,
            levels: a.adapted.as_ref().map(|ab| ab.levels.clone()),
            basis: a.adapted.as_ref().map(|ab| ab.basis.display_in_e(p)),
        },
        checks: a.checks.iter().map(check_doc).collect(),
    }
}

pub fn render_json(a: &Analysis) -> String {
    serde_json::to_string_pretty(&report_doc(a)).expect("report serializes")
}

fn set_string(v: &[u32]) -> String {
    format!(
        "{{{}}}",
        v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn matrix_string(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

pub fn check_line(c: &CheckDoc) -> String {
    let mut line = format!(
        "{} {}{}",
        if c.holds { "PASS" } else { "FAIL" },
        c.predicate,
        if c.monitor { " (monitor)" } else { "" }
    );
    for v in &c.violations {
        match v.level {
            Some(i) => write!(line, "\n    at i = {i}: {}", v.evidence),
            None => write!(line, "\n    {}", v.evidence),
        }
        .expect("write to string");
    }
    if !c.holds && c.monitor {
        line.push_str("\n    (violation or non-crystalline input)");
    }
    line
}

pub fn render_text(a: &Analysis) -> String {
    let doc = report_doc(a);
    let mut out = String::new();
    let w = &mut out;
    let name = doc.input.name.as_deref().unwrap_or("(unnamed)");
    writeln!(
        w,
        "module {name}: p = {}, rank {}, det B = unit * E^{}",
        doc.input.p, doc.input.rank, doc.det_exponent
    )
    .unwrap();
    writeln!(w, "B = {}", matrix_string(&doc.input.frobenius)).unwrap();
    writeln!(w, "\nfiltration (entries in powers of E):").unwrap();
    for s in &doc.stages {
        writeln!(
            w,
            "  C_{} = {}  kappa = {}",
            s.i,
            matrix_string(&s.basis),
            s.kappa
        )
        .unwrap();
    }
    writeln!(w, "\nFil^i M:").unwrap();
    for s in &doc.stages {
        writeln!(w, "  i = {}: {}", s.i, matrix_string(&s.lattice)).unwrap();
    }
    writeln!(w, "\ngraded pieces:").unwrap();
    writeln!(w, "  {:>3}  {:>4}  torsion", "i", "free").unwrap();
    for g in &doc.graded {
        let tors = if g.torsion.is_empty() {
            "-".to_string()
        } else {
            g.torsion
                .iter()
                .map(|n| format!("Z/p^{n}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        writeln!(w, "  {:>3}  {:>4}  {tors}", g.i, g.free_rank).unwrap();
    }
    writeln!(w, "\nweights {}  h = {}", set_string(&doc.weights), doc.h).unwrap();
    writeln!(
        w,
        "J = {}  strict J = {}",
        set_string(&doc.j),
        set_string(&doc.j_strict)
    )
    .unwrap();
    writeln!(w, "E-adic divisors of B {}", set_string(&doc.e_divisors)).unwrap();
    writeln!(
        w,
        "mod-p divisors a = {}, residues {}",
        set_string(&doc.gee_kisin.a),
        set_string(&doc.gee_kisin.residues)
    )
    .unwrap();
    match (&doc.adapted.levels, &doc.adapted.basis) {
        (Some(levels), Some(basis)) => writeln!(
            w,
            "adapted basis {} with levels {}",
            matrix_string(basis),
            set_string(levels)
        )
        .unwrap(),
        _ if doc.adapted.exists => writeln!(w, "adapted basis exists (not constructed)").unwrap(),
        _ => writeln!(w, "no adapted basis (torsion below h)").unwrap(),
    }
    writeln!(w, "\nchecks:").unwrap();
    for c in &doc.checks {
        writeln!(w, "  {}", check_line(c).replace('\n', "\n  ")).unwrap();
    }
    out
}
