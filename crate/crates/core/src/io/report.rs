//! The JSON report. Field layout is documented in `docs/report-schema.md`.

use num_integer::Integer;
use serde::Serialize;

use crate::checks::CheckList;
use crate::commalg::{analyze, find_trivial_subalgebra, AnalysisConfig, AnalysisReport};
use crate::error::{Result, YdhError};
use crate::exactla::Vector;
use crate::integrals::{compute_integrals, IntegralPair};
use crate::ydhopf::{verify_axioms, YDHopfAlgebra};
use crate::ydmod::YdSide;

pub const SCHEMA: &str = "ydh-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub dim: usize,
    pub order: u32,
    pub group: String,
    pub group_order: usize,
    pub side: &'static str,
    pub antipode_given: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraSummary {
    pub chosen: usize,
    pub via_core_of: Option<usize>,
    pub dim: usize,
    pub basis: Vec<Vector>,
    pub checks: CheckList,
}

/// Everything that is a pure function of the input; serializes byte-identically.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub schema_version: u32,
    pub input: InputSummary,
    pub axioms: CheckList,
    pub axioms_passed: bool,
    pub trivial: bool,
    pub triviality_witness: Option<(usize, usize)>,
    pub gcd_dim_group: usize,
    pub commutative: bool,
    pub cocommutative: bool,
    pub integrals: Option<IntegralPair>,
    /// Why a step did not run (not semisimple, not commutative, field too small, ...).
    pub skipped: Vec<String>,
    pub analysis: Option<AnalysisReport>,
    /// Pair (e, e') to the number m of characters in eta_e eta_{e'}.
    pub character_product_dims: Option<Vec<Vec<usize>>>,
    pub trivial_subalgebra: Option<SubalgebraSummary>,
    pub axiom_failures: Vec<String>,
    pub theorem_failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Serialize)]
struct Envelope<'a> {
    canonical: &'a Report,
    timing: &'a Timing,
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub analysis: AnalysisConfig,
}

fn skip_reason(what: &str, e: &YdhError) -> String {
    format!("{what}: {e}")
}

/// Verify, then run every applicable analysis. Fails only on non-split fields and theorem
/// violations; everything else lands in the report.
pub fn build_report(a: &YDHopfAlgebra, opts: &ReportOptions) -> Result<Report> {
    let axioms = verify_axioms(a);
    let t = a.is_trivial();
    let group = a.module().group();
    let input = InputSummary {
        dim: a.dim(),
        order: a.order(),
        group: group.to_string(),
        group_order: group.order(),
        side: match a.side() {
            YdSide::Left => "left",
            YdSide::Right => "right",
        },
        antipode_given: a.antipode().is_some(),
    };
    let mut rep = Report {
        schema: SCHEMA,
        schema_version: SCHEMA_VERSION,
        gcd_dim_group: a.dim().gcd(&group.order()),
        input,
        axioms_passed: axioms.passed(),
        axioms,
        trivial: t.trivial,
        triviality_witness: t.witness,
        commutative: a.algebra().is_commutative(),
        cocommutative: a.dualize().algebra().is_commutative(),
        integrals: None,
        skipped: Vec::new(),
        analysis: None,
        character_product_dims: None,
        trivial_subalgebra: None,
        axiom_failures: Vec::new(),
        theorem_failures: Vec::new(),
        passed: false,
    };
    rep.axiom_failures = rep
        .axioms
        .failures()
        .iter()
        .map(|c| format!("axioms.{}", c.name))
        .collect();
    if !rep.axioms_passed {
        rep.skipped.push("analysis: input fails the axioms".into());
        return Ok(rep);
    }
    match compute_integrals(a) {
        Ok(i) => rep.integrals = Some(i),
        Err(e @ YdhError::NonSplitField(_)) => return Err(e),
        Err(e) => rep.skipped.push(skip_reason("integrals", &e)),
    }
    if rep.commutative && rep.integrals.is_some() {
        match analyze(a, opts.analysis.clone()) {
            Ok(an) => {
                let d = an.dim;
                let mut m = vec![vec![0; d]; d];
                for p in &an.pairs {
                    m[p.e][p.e_prime] = p.omegas.len();
                }
                rep.theorem_failures.extend(an.failures());
                rep.character_product_dims = Some(m);
                rep.analysis = Some(an);
            }
            Err(e @ (YdhError::NonSplitField(_) | YdhError::TheoremViolation { .. })) => {
                return Err(e)
            }
            Err(e) => rep.skipped.push(skip_reason("analysis", &e)),
        }
    }
    if rep.cocommutative && rep.integrals.is_some() && a.dim() > 1 {
        match find_trivial_subalgebra(a) {
            Ok(b) => {
                rep.theorem_failures.extend(
                    b.checks
                        .failures()
                        .iter()
                        .map(|c| format!("trivial_subalgebra.{}", c.name)),
                );
                rep.trivial_subalgebra = Some(SubalgebraSummary {
                    chosen: b.chosen,
                    via_core_of: b.via_core_of,
                    dim: b.dim,
                    basis: b.basis,
                    checks: b.checks,
                });
            }
            Err(e @ YdhError::TheoremViolation { .. }) => return Err(e),
            Err(e) => rep.skipped.push(skip_reason("trivial_subalgebra", &e)),
        }
    }
    rep.passed = rep.axiom_failures.is_empty() && rep.theorem_failures.is_empty();
    Ok(rep)
}

/// The canonical section alone, pretty-printed.
pub fn canonical_json(rep: &Report) -> String {
    serde_json::to_string_pretty(rep).expect("report serializes")
}

/// The full document: canonical section followed by the timing trailer.
pub fn render_json(rep: &Report, timing: &Timing) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope {
        canonical: rep,
        timing,
    })
    .expect("report serializes");
    s.push('\n');
    s
}
