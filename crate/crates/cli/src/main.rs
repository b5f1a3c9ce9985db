use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nygaard_cli::catalog::catalog;
use nygaard_cli::generate::{GeneratorConfig, SearchMode};
use nygaard_cli::render::{check_doc, check_line, is_monitor, render_json, render_text};
use nygaard_cli::search::{search, SearchConfig};
use nygaard_cli::spec::load_spec;
use nygaard_core::analysis::{
    analyze, verify_adapted, Analysis, AnalysisOptions, CheckReport, GEE_KISIN, GRADED_RANKS,
    SATURATION, THM1, THM1_REFINED, WEIGHTS,
};
use nygaard_core::bkcore::{nygaard_direct_oracle, nygaard_filtration, BKModule};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const INPUT: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "nygaard",
    version,
    about = "Nygaard filtrations of Breuil-Kisin modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: filtration, graded pieces, weights and every check.
    Report {
        file: PathBuf,
        /// Compute stages up to this level (at least h + 1 are always computed).
        #[arg(long)]
        imax: Option<u32>,
        #[arg(long)]
        json: bool,
        /// Exit 1 when a monitored statement reports a violation.
        #[arg(long)]
        strict: bool,
    },
    /// Run one family of checks and print a verdict per predicate.
    Check { which: CheckKind, file: PathBuf },
    /// Decide, construct and verify an adapted basis.
    Adapted { file: PathBuf },
    /// Confirm every stage against the direct kernel computation.
    Oracle { file: PathBuf },
    /// Seeded random search for torsion in the graded pieces.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long)]
        workers: Option<usize>,
        /// Only constant twists A diag(E^r) P.
        #[arg(long, conflicts_with = "extension")]
        constant_twist: bool,
        /// Upper triangular middle factor with random entries above the diagonal.
        #[arg(long)]
        extension: bool,
    },
    /// List the built-in examples, or analyze all of them.
    Catalog {
        #[arg(long)]
        run: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Thm1,
    Gk,
    Lemma,
    All,
}

/// A failed command: message for stderr and exit code.
struct Failure(u8, String);

fn core_failure(e: nygaard_core::Error) -> Failure {
    let code = if e.is_internal() { INTERNAL } else { INPUT };
    Failure(code, e.to_string())
}

fn load(path: &Path) -> Result<BKModule, Failure> {
    load_spec(path).map_err(|e| Failure(INPUT, format!("{}: {e}", path.display())))
}

fn run_analysis(m: &BKModule, opts: AnalysisOptions) -> Result<Analysis, Failure> {
    analyze(m, opts).map_err(core_failure)
}

/// Internal invariants failing beat monitor violations.
fn verdict_code(checks: &[&CheckReport], strict: bool) -> u8 {
    if checks.iter().any(|c| !c.holds && !is_monitor(c.predicate)) {
        INTERNAL
    } else if strict && checks.iter().any(|c| !c.holds) {
        VIOLATION
    } else {
        OK
    }
}

fn print_checks(checks: &[&CheckReport]) {
    for c in checks {
        println!("{}", check_line(&check_doc(c)));
    }
}

fn report(file: &Path, imax: Option<u32>, json: bool, strict: bool) -> Result<u8, Failure> {
    let m = load(file)?;
    let a = run_analysis(
        &m,
        AnalysisOptions {
            i_max: imax,
            ..AnalysisOptions::default()
        },
    )?;
    if json {
        println!("{}", render_json(&a));
    } else {
        print!("{}", render_text(&a));
    }
    let checks: Vec<_> = a.checks.iter().collect();
    Ok(verdict_code(&checks, strict))
}

fn check(which: CheckKind, file: &Path) -> Result<u8, Failure> {
    let m = load(file)?;
    let opts = match which {
        CheckKind::Lemma => AnalysisOptions::default(),
        CheckKind::All => AnalysisOptions::full(),
        _ => AnalysisOptions::minimal(),
    };
    let a = run_analysis(&m, opts)?;
    let selected: Vec<&CheckReport> = match which {
        CheckKind::Thm1 => a
            .checks
            .iter()
            .filter(|c| [THM1, THM1_REFINED].contains(&c.predicate))
            .collect(),
        CheckKind::Gk => a
            .checks
            .iter()
            .filter(|c| c.predicate == GEE_KISIN)
            .collect(),
        CheckKind::Lemma => a
            .checks
            .iter()
            .filter(|c| {
                !is_monitor(c.predicate)
                    && ![WEIGHTS, GRADED_RANKS, SATURATION].contains(&c.predicate)
            })
            .collect(),
        CheckKind::All => a.checks.iter().collect(),
    };
    print_checks(&selected);
    Ok(verdict_code(&selected, true))
}

fn adapted(file: &Path) -> Result<u8, Failure> {
    let m = load(file)?;
    let a = run_analysis(
        &m,
        AnalysisOptions {
            lemmas: false,
            ..AnalysisOptions::default()
        },
    )?;
    let p = m.prime();
    if !a.adapted_exists {
        println!(
            "no adapted basis: torsion in gr^i for i < h = {} at {:?}",
            a.h(),
            a.torsion_levels()
        );
        return Ok(OK);
    }
    let Some(ab) = &a.adapted else {
        println!("adapted basis exists but construction failed: unknown");
        return Ok(VIOLATION);
    };
    let levels: Vec<String> = ab.levels.iter().map(u32::to_string).collect();
    println!("levels {{{}}}", levels.join(", "));
    for (j, col) in ab.basis.columns().iter().enumerate() {
        let entries: Vec<String> = col.iter().map(|f| f.display_in_e(p)).collect();
        println!(
            "  e_{} = ({})  level {}",
            j + 1,
            entries.join(", "),
            ab.levels[j]
        );
    }
    let v = verify_adapted(ab, &a.filtration);
    println!("{}", check_line(&check_doc(&v)));
    Ok(if v.holds { OK } else { VIOLATION })
}

fn oracle(file: &Path) -> Result<u8, Failure> {
    let m = load(file)?;
    let filt = nygaard_filtration(&m, None).map_err(core_failure)?;
    let mut code = OK;
    for s in filt.stages.iter().skip(1) {
        let v = nygaard_direct_oracle(&m, s.i, &s.c).map_err(core_failure)?;
        println!(
            "i = {}: {} (kernel rank {}, candidate rank {}, contains E^i: {})",
            s.i,
            if v.agrees { "agree" } else { "DISAGREE" },
            v.kernel.rank(),
            v.candidate.rank(),
            v.contains_e_power
        );
        if !v.agrees {
            code = INTERNAL;
        }
    }
    Ok(code)
}

fn run_search(cfg: SearchConfig) -> Result<u8, Failure> {
    let g = &cfg.generator;
    if g.weights.len() != g.rank {
        return Err(Failure(
            INPUT,
            format!(
                "--weights needs {} entries, got {}",
                g.rank,
                g.weights.len()
            ),
        ));
    }
    if g.rank == 0 || g.height < 0 {
        return Err(Failure(
            INPUT,
            "--rank must be positive and --height non-negative".into(),
        ));
    }
    nygaard_core::exactring::Prime::new(g.p).map_err(|e| Failure(INPUT, e.to_string()))?;
    let out = search(&cfg).map_err(|f| {
        let code = if f.error.is_internal() {
            INTERNAL
        } else {
            INPUT
        };
        Failure(
            code,
            format!("sample {} (seed {}): {}", f.index, cfg.seed, f.error),
        )
    })?;
    eprintln!(
        "{} samples, {} findings, {} counter-candidates",
        out.generated,
        out.findings.len(),
        out.counter_candidates.len()
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("outcome serializes")
    );
    Ok(OK)
}

fn run_catalog(run: bool) -> Result<u8, Failure> {
    let entries = catalog();
    if !run {
        for e in &entries {
            println!(
                "{:<22} {}{}",
                e.name,
                e.description,
                if e.certified { "" } else { " [uncertified]" }
            );
        }
        return Ok(OK);
    }
    let mut code = OK;
    for e in &entries {
        let a = run_analysis(&e.module, AnalysisOptions::default())?;
        // Monitors only bind on certified entries.
        let failed: Vec<&CheckReport> = a
            .checks
            .iter()
            .filter(|c| !c.holds && (e.certified || !is_monitor(c.predicate)))
            .collect();
        let noted: Vec<&str> = a
            .checks
            .iter()
            .filter(|c| !c.holds && !failed.contains(c))
            .map(|c| c.predicate)
            .collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {:<22} weights {:?} torsion at {:?}",
            e.name,
            a.weights.weights,
            a.torsion_levels()
        );
        if !noted.is_empty() {
            line.push_str(&format!(
                "  monitor violations (uncertified): {}",
                noted.join(", ")
            ));
        }
        println!("{line}");
        for c in &failed {
            println!("  {}", check_line(&check_doc(c)).replace('\n', "\n  "));
        }
        if !failed.is_empty() {
            code = VIOLATION;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Report {
            file,
            imax,
            json,
            strict,
        } => report(&file, imax, json, strict),
        Command::Check { which, file } => check(which, &file),
        Command::Adapted { file } => adapted(&file),
        Command::Oracle { file } => oracle(&file),
        Command::Search {
            p,
            rank,
            weights,
            count,
            seed,
            deg,
            height,
            workers,
            constant_twist,
            extension,
        } => {
            let mode = if constant_twist {
                SearchMode::ConstantTwist
            } else if extension {
                SearchMode::Extension
            } else {
                SearchMode::All
            };
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            run_search(SearchConfig {
                generator: GeneratorConfig {
                    p,
                    rank,
                    weights,
                    deg,
                    height,
                    mode,
                },
                count,
                seed,
                workers,
            })
        }
        Command::Catalog { run } => run_catalog(run),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
