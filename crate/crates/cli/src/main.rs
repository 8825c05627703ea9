//! `ydh`: verify, analyze and search Yetter-Drinfeld Hopf algebras stored in YDH files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use ydh_core::abgroup::FinAbGroup;
use ydh_core::catalog::{search_nontrivial, standard_catalog, CoefficientBudget, SearchConfig};
use ydh_core::commalg::{core, Analysis, AnalysisConfig};
use ydh_core::io::{
    build_report, canonical_json, read_file, render_json, write_file, Report, ReportOptions,
    Timing, YdhDocument,
};
use ydh_core::ydhopf::{verify_axioms, YDHopfAlgebra};
use ydh_core::YdhError;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NONSPLIT: u8 = 3;

#[derive(Parser)]
#[command(name = "ydh", version, about = "Exact checks for Yetter-Drinfeld Hopf algebras over K[G]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Lift {
    /// Re-express the input over Q(zeta_N) for a multiple N of its order.
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms; exit 0 iff every file passes.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        lift: Lift,
    },
    /// Axioms, integrals and the structure analysis of a commutative semisimple instance.
    Analyze {
        file: PathBuf,
        /// Also run the checks that materialize the twisted square A (x) A.
        #[arg(long)]
        tensor_ideals: bool,
        /// Exhaustive subset enumeration up to this many idempotents.
        #[arg(long, default_value_t = 12)]
        subset_cap: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        lift: Lift,
    },
    /// The core of the K-th primitive idempotent of a commutative semisimple instance.
    Core {
        file: PathBuf,
        #[arg(long)]
        idempotent: usize,
        #[command(flatten)]
        lift: Lift,
    },
    /// Write the dual instance.
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Search for commutative semisimple instances and write them as fixtures.
    Search {
        /// Group such as "Z/2" or "Z/2 x Z/2".
        #[arg(long)]
        group: String,
        #[arg(long)]
        dim: usize,
        /// Branch nodes per action class.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        #[arg(long, default_value_t = 4)]
        max_denominator: u32,
        #[arg(long, default_value_t = 4)]
        max_numerator: u32,
        #[arg(long, default_value_t = 4)]
        root_order: u32,
        /// Do not skip dimensions coprime to |G|.
        #[arg(long)]
        no_prune: bool,
        /// Keep only nontrivial instances.
        #[arg(long)]
        nontrivial_only: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write the standard catalog of trivial instances (K[C] and K^C) as YDH files.
    Catalog {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// JSON reports on stdout, one document per file.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        tensor_ideals: bool,
        #[command(flatten)]
        lift: Lift,
    },
}

struct Failure(u8, String);

impl From<YdhError> for Failure {
    fn from(e: YdhError) -> Self {
        let code = match e {
            YdhError::NonSplitField(_) => EXIT_NONSPLIT,
            YdhError::Parse { .. }
            | YdhError::Io(_)
            | YdhError::DimensionMismatch { .. }
            | YdhError::InvalidGroup(_)
            | YdhError::InvalidAction(_)
            | YdhError::MalformedStructure(_)
            | YdhError::NonDivisibleOrders { .. } => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn load(path: &Path, lift: &Lift) -> Result<YdhDocument, Failure> {
    let mut doc = read_file(path).map_err(|e| {
        let f = Failure::from(e);
        Failure(f.0, format!("{}: {}", path.display(), f.1))
    })?;
    if let Some(n) = lift.order {
        doc.algebra = doc.algebra.with_order(n)?;
    }
    Ok(doc)
}

fn report_for(a: &YDHopfAlgebra, tensor_ideals: bool, subset_cap: usize) -> Result<(Report, Timing), Failure> {
    let t = Instant::now();
    let opts = ReportOptions {
        analysis: AnalysisConfig {
            subset_cap,
            tensor_ideals,
        },
    };
    let rep = build_report(a, &opts)?;
    Ok((
        rep,
        Timing {
            total_ms: t.elapsed().as_millis(),
        },
    ))
}

fn summary(path: &Path, rep: &Report) {
    println!(
        "{}: dim {} over {} (N = {}), trivial: {}, gcd(dim, |G|) = {}",
        path.display(),
        rep.input.dim,
        rep.input.group,
        rep.input.order,
        rep.trivial,
        rep.gcd_dim_group
    );
    if rep.gcd_dim_group == 1 {
        println!("  coprime dimension: triviality required and {}", if rep.trivial { "holds" } else { "VIOLATED" });
    } else {
        println!("  gcd > 1: nontrivial structure permitted, consistent");
    }
    if let Some(an) = &rep.analysis {
        let idx: Vec<String> = an.idempotents.iter().map(|r| r.index.to_string()).collect();
        println!("  {} primitive idempotents, indices [{}]", an.dim, idx.join(", "));
    }
    if let Some(b) = &rep.trivial_subalgebra {
        println!("  trivial subalgebra of dimension {}", b.dim);
    }
    for s in &rep.skipped {
        println!("  skipped {s}");
    }
    for f in rep.axiom_failures.iter().chain(&rep.theorem_failures) {
        eprintln!("  FAIL {f}");
    }
    println!("  {}", if rep.passed { "PASS" } else { "FAIL" });
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Verify { files, lift } => {
            let mut ok = true;
            for f in &files {
                let doc = load(f, &lift)?;
                let rep = verify_axioms(&doc.algebra);
                let failures = rep.failures();
                println!(
                    "{}: {} checks, {} failed{}",
                    f.display(),
                    rep.checks.len(),
                    failures.len(),
                    if doc.algebra.is_trivial().trivial { ", trivial" } else { ", nontrivial" }
                );
                for c in failures {
                    eprintln!("  FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
                }
                ok &= rep.passed();
            }
            Ok(ok)
        }
        Cmd::Analyze {
            file,
            tensor_ideals,
            subset_cap,
            json,
            lift,
        } => {
            let doc = load(&file, &lift)?;
            let (rep, timing) = report_for(&doc.algebra, tensor_ideals, subset_cap)?;
            summary(&file, &rep);
            if let Some(out) = json {
                std::fs::write(&out, render_json(&rep, &timing))
                    .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", out.display())))?;
            }
            Ok(rep.passed)
        }
        Cmd::Core {
            file,
            idempotent,
            lift,
        } => {
            let doc = load(&file, &lift)?;
            let an = Analysis::new(&doc.algebra)?;
            if idempotent >= an.dim() {
                return Err(Failure(
                    EXIT_USAGE,
                    format!("idempotent {idempotent} out of range (dim {})", an.dim()),
                ));
            }
            let c = core(&an, idempotent)?;
            println!("{}", serde_json::to_string_pretty(&c).expect("serializes"));
            for f in c.checks.failures() {
                eprintln!("  FAIL {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
            Ok(c.checks.passed())
        }
        Cmd::Dualize { file, output } => {
            let doc = read_file(&file)?;
            let dual = YdhDocument::new(doc.algebra.dualize());
            write_file(&output, &dual)?;
            Ok(true)
        }
        Cmd::Search {
            group,
            dim,
            budget,
            max_denominator,
            max_numerator,
            root_order,
            no_prune,
            nontrivial_only,
            out,
        } => {
            let g = FinAbGroup::parse(&group)?;
            let mut cfg = SearchConfig::new(g.clone(), dim);
            cfg.budget = CoefficientBudget {
                max_denominator,
                max_numerator,
                root_order,
            };
            cfg.order = ydh_core::cyclo::lcm(g.exponent().max(1), root_order.max(1));
            cfg.max_nodes = budget;
            cfg.prune_coprime = !no_prune;
            let res = search_nontrivial(&cfg)?;
            println!(
                "{} action classes, {} nodes, {} instances ({} nontrivial){}{}",
                res.ansatz_count,
                res.nodes,
                res.instances.len(),
                res.nontrivial().count(),
                if res.pruned { ", pruned: gcd(dim, |G|) = 1" } else { "" },
                if res.confirmation_run { ", confirmation run" } else { "" },
            );
            if res.exhausted {
                eprintln!("warning: node budget exhausted, results are partial");
            }
            std::fs::create_dir_all(&out)
                .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", out.display())))?;
            let tag: String = g
                .factors()
                .iter()
                .map(|n| format!("z{n}"))
                .collect::<Vec<_>>()
                .join("x");
            let mut ok = true;
            for (i, f) in res.instances.iter().enumerate() {
                if nontrivial_only && f.trivial {
                    continue;
                }
                let kind = if f.trivial { "trivial" } else { "nontrivial" };
                let stem = format!("search_{tag}_d{dim}_{i:02}_{kind}");
                let path = out.join(format!("{stem}.ydh"));
                write_file(&path, &YdhDocument::new(f.algebra.clone()))?;
                // re-read what was written so the fixture is what gets certified
                let back = read_file(&path)?;
                let (rep, _) = report_for(&back.algebra, true, 12)?;
                std::fs::write(out.join(format!("{stem}.report.json")), canonical_json(&rep) + "\n")
                    .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
                println!("  {} {}", path.display(), if rep.passed { "PASS" } else { "FAIL" });
                ok &= rep.passed;
            }
            Ok(ok)
        }
        Cmd::Catalog { out } => {
            std::fs::create_dir_all(&out)
                .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", out.display())))?;
            for (name, a) in standard_catalog() {
                let stem: String = name
                    .replace("K^", "dual_")
                    .replace("K[", "k_")
                    .to_lowercase()
                    .chars()
                    .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                    .collect::<String>()
                    .split('_')
                    .filter(|p| !p.is_empty())
                    .collect::<Vec<_>>()
                    .join("_");
                let path = out.join(format!("{stem}.ydh"));
                write_file(&path, &YdhDocument::new(a))?;
                println!("{}", path.display());
            }
            Ok(true)
        }
        Cmd::Report {
            files,
            tensor_ideals,
            lift,
        } => {
            let results: Vec<Result<(Report, Timing), Failure>> = files
                .par_iter()
                .map(|f| {
                    let doc = load(f, &lift)?;
                    report_for(&doc.algebra, tensor_ideals, 12)
                })
                .collect();
            let mut ok = true;
            for r in results {
                let (rep, timing) = r?;
                print!("{}", render_json(&rep, &timing));
                ok &= rep.passed;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = std::env::var("YDH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
