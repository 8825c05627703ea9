//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//! Everything is exact; the only floating point is the wall clock.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ydh_core::abgroup::{all_subgroups, FinAbGroup, Side, Subgroup};
use ydh_core::catalog::{search_nontrivial, standard_catalog, SearchConfig};
use ydh_core::commalg::{
    analyze, check_triviality_theorem, core, find_trivial_subalgebra, idempotent_from_character,
    reciprocity_check, stability_subalgebra, Analysis, AnalysisConfig,
};
use ydh_core::exactla::{dot, unit_vec, vaxpy, vscale, zero_vec, Vector};
use ydh_core::integrals::{compute_integrals, verify_integral_properties};
use ydh_core::io::{build_report, canonical_json, parse, read_file, render, ReportOptions};
use ydh_core::ydhopf::{verify_axioms, YDHopfAlgebra};
use ydh_core::ydmod::{
    braid_inverse, braid_matrix, quasisymmetry, quasisymmetry_refined, quasisymmetry_right,
    unflatten, YDModule, YdSide,
};
use ydh_core::{CycNum, YdhError};

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ydh_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).collect())
        .unwrap_or_default();
    v.retain(|p| p.extension().is_some_and(|x| x == "ydh"));
    v.sort();
    v
}

fn nontrivial_fixtures() -> Vec<(String, YDHopfAlgebra)> {
    ydh_files(&fixtures().join("search"))
        .into_iter()
        .filter(|p| p.to_string_lossy().contains("nontrivial"))
        .map(|p| {
            let doc = read_file(&p).expect("fixture parses");
            (p.file_name().unwrap().to_string_lossy().into_owned(), doc.algebra)
        })
        .collect()
}

/// Catalog plus the nontrivial search fixtures; all are commutative and semisimple.
fn instances() -> Vec<(String, YDHopfAlgebra)> {
    let mut v = standard_catalog();
    v.extend(nontrivial_fixtures());
    v
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Left regular trace on an arbitrary algebra, straight from the multiplication.
fn regular_trace(a: &YDHopfAlgebra, x: &[CycNum]) -> CycNum {
    let (d, n) = (a.dim(), a.order());
    let mut t = CycNum::zero(n);
    for j in 0..d {
        t = &t + &a.mul(x, &unit_vec(d, j, n))[j];
    }
    t
}

fn lift_until_split<T>(
    a: &YDHopfAlgebra,
    f: impl Fn(&YDHopfAlgebra) -> ydh_core::Result<T>,
) -> ydh_core::Result<T> {
    let mut cur = a.clone();
    for _ in 0..3 {
        match f(&cur) {
            Err(YdhError::NonSplitField(_)) => cur = cur.with_order(2 * cur.order())?,
            other => return other,
        }
    }
    f(&cur)
}

fn c1_axioms() -> Outcome {
    let t0 = Instant::now();
    let cat = standard_catalog();
    ensure(cat.len() >= 10, || format!("catalog has {} entries", cat.len()))?;
    for (name, a) in &cat {
        let rep = verify_axioms(a);
        ensure(rep.passed(), || format!("{name}: {:?}", rep.failures()))?;
        ensure(a.is_trivial().trivial, || format!("{name}: reported nontrivial"))?;
    }
    let el = t0.elapsed();
    ensure(el < Duration::from_secs(10), || format!("took {el:?}"))?;
    Ok(format!("{} instances in {:.2}s", cat.len(), el.as_secs_f64()))
}

fn c2_integrals() -> Outcome {
    let all = instances();
    for (name, a) in &all {
        let (d, n) = (a.dim(), a.order());
        let p = compute_integrals(a).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify_integral_properties(a, &p);
        ensure(rep.passed(), || format!("{name}: {:?}", rep.failures()))?;
        let (big, small) = (&p.element, &p.functional);
        let one = CycNum::one(n);
        ensure(a.epsilon(big) == one, || format!("{name}: eps(Lambda)"))?;
        ensure(dot(small, big) == one, || format!("{name}: lambda(Lambda)"))?;
        ensure(dot(small, a.unit()) == CycNum::from_int(d as i64, n), || {
            format!("{name}: lambda(1)")
        })?;
        // lambda is the regular trace, computed here without the library routine
        for i in 0..d {
            let e = unit_vec(d, i, n);
            ensure(regular_trace(a, &e) == small[i], || format!("{name}: trace at e{i}"))?;
        }
        let s = a.antipode_or_solve().map_err(|e| format!("{name}: {e}"))?;
        ensure(&s.mul_vec(big) == big, || format!("{name}: S(Lambda)"))?;
        ensure(&s.vec_mul(small) == small, || format!("{name}: lambda S"))?;
        // a Lambda = eps(a) Lambda
        for i in 0..d {
            let e = unit_vec(d, i, n);
            let want = vscale(big, &a.epsilon(&e));
            ensure(a.mul(&e, big) == want && a.mul(big, &e) == want, || {
                format!("{name}: Lambda not two-sided at e{i}")
            })?;
        }
    }
    Ok(format!("{} instances", all.len()))
}

fn c3_idempotents() -> Outcome {
    let all = instances();
    let mut count = 0;
    for (name, a) in &all {
        let an = Analysis::new(a).map_err(|e| format!("{name}: {e}"))?;
        let alg = &an.algebra;
        let (d, n) = (alg.dim(), alg.order());
        let mut sum = zero_vec(d, n);
        for (x, r) in an.records.iter().enumerate() {
            ensure(dot(&an.integrals.functional, &r.e) == CycNum::one(n), || {
                format!("{name}: lambda(e{x}) != 1")
            })?;
            let f = idempotent_from_character(alg, &r.eta, &an.integrals.element)
                .map_err(|e| format!("{name}: {e}"))?;
            ensure(f == r.e, || format!("{name}: formula gives a different e{x}"))?;
            // Wedderburn oracle: orthogonal idempotents, eta(e_y) = delta
            for (y, q) in an.records.iter().enumerate() {
                let want = if x == y { r.e.clone() } else { zero_vec(d, n) };
                ensure(alg.mul(&r.e, &q.e) == want, || format!("{name}: e{x} e{y}"))?;
                let v = dot(&r.eta, &q.e);
                ensure(v == if x == y { CycNum::one(n) } else { CycNum::zero(n) }, || {
                    format!("{name}: eta{x}(e{y})")
                })?;
            }
            vaxpy(&mut sum, &CycNum::one(n), &r.e);
            count += 1;
        }
        ensure(&sum == alg.unit(), || format!("{name}: idempotents do not sum to 1"))?;
        reciprocity_check(&an).map_err(|w| format!("{name}: reciprocity {w}"))?;
    }
    Ok(format!("{count} idempotents over {} instances", all.len()))
}

fn average(m: &YDModule, v: &[CycNum], sub: &Subgroup, use_psi: bool) -> Vector {
    let n = m.order();
    let mut acc = zero_vec(m.dim(), n);
    for x in sub.elements() {
        let op = if use_psi { m.psi(x) } else { m.phi(x) };
        vaxpy(&mut acc, &CycNum::one(n), &op.mul_vec(v));
    }
    vscale(&acc, &CycNum::from_frac(1, sub.order() as i64, n))
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, n: u32) -> Vector {
    (0..d)
        .map(|_| {
            let re = CycNum::from_int(rng.gen_range(-3..=3), n);
            let im = CycNum::from_int(rng.gen_range(-2..=2), n);
            &re + &(&im * &CycNum::zeta_pow(n, (n / 4).max(1) as i64))
        })
        .collect()
}

/// Modules used for the braiding checks: every instance plus permutation modules over
/// Z/2 x Z/4 and Z/8.
fn test_modules() -> Vec<(String, YDModule)> {
    let mut v: Vec<(String, YDModule)> =
        instances().into_iter().map(|(s, a)| (s, a.module().clone())).collect();
    let g24 = FinAbGroup::new(vec![2, 4]).unwrap();
    v.push((
        "perm Z/2 x Z/4".into(),
        YDModule::from_permutations(
            g24,
            4,
            4,
            &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
            &[vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
        )
        .unwrap(),
    ));
    v.push((
        "perm Z/8".into(),
        YDModule::from_permutations(
            FinAbGroup::cyclic(8),
            8,
            8,
            &[vec![1, 2, 3, 4, 5, 6, 7, 0]],
            &[vec![4, 5, 6, 7, 0, 1, 2, 3]],
        )
        .unwrap(),
    ));
    v
}

fn c4_quasisymmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mods = test_modules();
    let mut compared = 0;
    for (name, m) in &mods {
        let grp = m.group().clone();
        ensure(grp.order() <= 8, || format!("{name}: group too large"))?;
        let n = m.order();
        let (d, ts, qs) = (
            m.dim(),
            all_subgroups(&grp, Side::Group),
            all_subgroups(&grp, Side::Dual),
        );
        for t in &ts {
            for q in &qs {
                let v = average(m, &random_vec(&mut rng, d, n), q, true);
                let w = average(m, &random_vec(&mut rng, d, n), t, false);
                let generic = quasisymmetry(m, m, &v, &w).map_err(|e| format!("{name}: {e}"))?;
                let refined =
                    quasisymmetry_refined(m, m, &v, &w, t, q).map_err(|e| format!("{name}: {e}"))?;
                ensure(generic == refined, || format!("{name}: refined formula differs"))?;
                compared += 1;
            }
        }
        let s = braid_matrix(YdSide::Left, m);
        for i in 0..d * d {
            let x = unflatten(&unit_vec(d * d, i, n), d, d, n);
            let y = unflatten(&s.col(i), d, d, n);
            ensure(braid_inverse(YdSide::Left, m, m, &y) == x, || {
                format!("{name}: inverse fails on basis tensor {i}")
            })?;
        }
        // <sigma(v (x) w), f' (x) f> = <v (x) w, sigma*(f' (x) f)> with the dual as a right module
        let md = m.dual();
        for _ in 0..3 {
            let (v, w) = (random_vec(&mut rng, d, n), random_vec(&mut rng, d, n));
            let (fw, fv) = (random_vec(&mut rng, d, n), random_vec(&mut rng, d, n));
            let s = quasisymmetry(m, m, &v, &w).map_err(|e| format!("{name}: {e}"))?;
            let r = quasisymmetry_right(&md, &md, &fw, &fv).map_err(|e| format!("{name}: {e}"))?;
            ensure(dot(&s.mul_vec(&fv), &fw) == dot(&r.mul_vec(&w), &v), || {
                format!("{name}: adjointness")
            })?;
        }
    }
    ensure(compared >= 100, || format!("only {compared} comparisons"))?;
    Ok(format!("{compared} refined/generic comparisons on {} modules", mods.len()))
}

fn c5_change_group() -> Outcome {
    let all = instances();
    let mut valid = 0;
    for (name, a) in &all {
        let grp = a.module().group().clone();
        let sigma = a.braid_matrix();
        for t in all_subgroups(&grp, Side::Group) {
            for q in all_subgroups(&grp, Side::Dual) {
                let trivial_action = a.module().acts_trivially(&t, &q);
                match a.change_group(&t, &q) {
                    Ok(b) => {
                        ensure(trivial_action, || format!("{name}: accepted an invalid pair"))?;
                        let rep = verify_axioms(&b);
                        ensure(rep.passed(), || format!("{name}: {:?}", rep.failures()))?;
                        ensure(b.braid_matrix() == sigma, || format!("{name}: braiding changed"))?;
                        valid += 1;
                    }
                    Err(YdhError::PreconditionViolated(_)) if !trivial_action => {}
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
    }
    Ok(format!("{valid} valid (T, Q) pairs over {} instances", all.len()))
}

fn c6_structure_suite() -> Outcome {
    let all = instances();
    let mut slowest = Duration::ZERO;
    for (name, a) in &all {
        let t0 = Instant::now();
        let rep = analyze(a, AnalysisConfig::default()).map_err(|e| format!("{name}: {e}"))?;
        let el = t0.elapsed();
        slowest = slowest.max(el);
        ensure(rep.passed(), || format!("{name}: {:?}", rep.failures()))?;
        ensure(el < Duration::from_secs(60), || format!("{name}: took {el:?}"))?;
        ensure(rep.pairs.len() == rep.dim * rep.dim, || format!("{name}: missing pairs"))?;
        // m = |O|, independently of the suite: the omegas of (e, e') form a set whose size
        // divides dim A
        for p in &rep.pairs {
            ensure(!p.omegas.is_empty() && rep.dim % p.omegas.len() == 0, || {
                format!("{name}: pair ({}, {}) has {} omegas", p.e, p.e_prime, p.omegas.len())
            })?;
        }
    }
    Ok(format!(
        "{} instances, tensor ideals on, slowest {:.2}s",
        all.len(),
        slowest.as_secs_f64()
    ))
}

fn c7_triviality() -> Outcome {
    let all = instances();
    let mut coprime = 0;
    for (name, a) in &all {
        let an = Analysis::new(a).map_err(|e| format!("{name}: {e}"))?;
        // any TheoremViolation surfaces here as an error and fails the run
        let checks = check_triviality_theorem(&an).map_err(|e| format!("{name}: {e}"))?;
        ensure(checks.passed(), || format!("{name}: {:?}", checks.failures()))?;
        ensure(checks.get("character_set_identity").is_some_and(|c| c.passed), || {
            format!("{name}: set identity")
        })?;
        if a.dim().gcd(&a.module().group().order()) == 1 {
            coprime += 1;
            ensure(a.is_trivial().trivial, || format!("{name}: coprime but nontrivial"))?;
            let rep = build_report(a, &ReportOptions::default()).map_err(|e| format!("{name}: {e}"))?;
            ensure(rep.trivial, || format!("{name}: report says nontrivial"))?;
        }
    }
    Ok(format!("{} instances, {coprime} with coprime dimension", all.len()))
}

fn c8_trivial_subalgebra() -> Outcome {
    let all = instances();
    let mut lifted = 0;
    let mut found = 0;
    for (name, a) in &all {
        let dual = a.dualize();
        if dual.dim() <= 1 {
            continue;
        }
        let b = lift_until_split(&dual, find_trivial_subalgebra).map_err(|e| format!("{name}: {e}"))?;
        if b.algebra.order() != dual.order() {
            lifted += 1;
        }
        ensure(b.checks.passed(), || format!("{name}: {:?}", b.checks.failures()))?;
        let rep = verify_axioms(&b.algebra);
        ensure(rep.passed(), || format!("{name}: B fails {:?}", rep.failures()))?;
        ensure(b.algebra.is_trivial().trivial, || format!("{name}: B nontrivial"))?;
        ensure(b.dim > 1 && dual.dim() % b.dim == 0 && b.algebra.dim() == b.dim, || {
            format!("{name}: dim B = {}, dim A = {}", b.dim, dual.dim())
        })?;
        found += 1;
    }
    Ok(format!("{found} duals, {lifted} needed a larger cyclotomic field"))
}

fn freeness_oracle(an: &Analysis, basis: &[Vector], what: &str) -> Result<(), String> {
    let dual = &an.dual;
    let (d, n) = (dual.dim(), dual.order());
    let sub = dual.subalgebra(basis).map_err(|e| format!("{what}: {e}"))?;
    let pb = compute_integrals(&sub).map_err(|e| format!("{what}: {e}"))?;
    let mut lam_b = zero_vec(d, n);
    for (c, b) in pb.element.iter().zip(basis) {
        vaxpy(&mut lam_b, c, b);
    }
    let r = &regular_trace(dual, &lam_b) * &CycNum::from_int(basis.len() as i64, n);
    ensure(r == CycNum::from_int(d as i64, n), || {
        format!("{what}: lambda(Lambda_B) dim B = {}", r.render())
    })
}

fn c9_freeness() -> Outcome {
    let all = instances();
    let mut subs = 0;
    for (name, a) in &all {
        let an = Analysis::new(a).map_err(|e| format!("{name}: {e}"))?;
        let d = an.dim();
        for x in 0..d {
            let st = stability_subalgebra(&an, x).map_err(|e| format!("{name}: {e}"))?;
            ensure(st.checks.passed(), || format!("{name}: {:?}", st.checks.failures()))?;
            ensure(st.freeness_rank > 0 && st.freeness_rank * st.dim == d, || {
                format!("{name}: stability rank {}", st.freeness_rank)
            })?;
            freeness_oracle(&an, &an.chars_of(&st.members), &format!("{name} stability e{x}"))?;
            let c = core(&an, x).map_err(|e| format!("{name}: {e}"))?;
            ensure(c.checks.passed(), || format!("{name}: {:?}", c.checks.failures()))?;
            ensure(c.freeness_rank > 0 && c.freeness_rank * c.m == d, || {
                format!("{name}: core rank {}", c.freeness_rank)
            })?;
            freeness_oracle(&an, &c.core_basis, &format!("{name} core e{x}"))?;
            subs += 2;
        }
    }
    Ok(format!("{subs} subalgebras"))
}

fn c10_search() -> Outcome {
    let cfg = SearchConfig::new(FinAbGroup::cyclic(2), 3);
    let first = search_nontrivial(&cfg).map_err(|e| e.to_string())?;
    ensure(first.confirmation_run && !first.pruned && !first.exhausted, || {
        "first coprime search was not a complete confirmation run".into()
    })?;
    ensure(first.nontrivial().count() == 0, || "nontrivial instance at dim 3".into())?;
    let second = search_nontrivial(&cfg).map_err(|e| e.to_string())?;
    ensure(second.pruned && second.instances.is_empty(), || "second run not pruned".into())?;

    let dir = fixtures().join("search");
    let files = ydh_files(&dir);
    ensure(!files.is_empty(), || "no search fixtures".into())?;
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let alg = parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        ensure(render(&alg) == text, || format!("{}: not canonical", f.display()))?;
        ensure(verify_axioms(&alg).passed(), || format!("{}: axioms", f.display()))?;
        let rep = build_report(&alg, &ReportOptions::default())
            .map_err(|e| format!("{}: {e}", f.display()))?;
        ensure(rep.passed, || format!("{}: {:?}", f.display(), rep.theorem_failures))?;
        let stored = std::fs::read_to_string(f.with_extension("report.json"))
            .map_err(|e| format!("{}: {e}", f.display()))?;
        ensure(canonical_json(&rep) + "\n" == stored, || {
            format!("{}: canonical report differs from the stored one", f.display())
        })?;
    }

    // the stored fixtures are exactly what the default search emits
    let mut regenerated = BTreeSet::new();
    for dim in [2, 4] {
        let out = search_nontrivial(&SearchConfig::new(FinAbGroup::cyclic(2), dim))
            .and_then(|o| o.complete())
            .map_err(|e| e.to_string())?;
        for (i, inst) in out.instances.iter().enumerate() {
            let kind = if inst.trivial { "trivial" } else { "nontrivial" };
            let p = dir.join(format!("search_z2_d{dim}_{i:02}_{kind}.ydh"));
            let stored = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            ensure(render(&inst.algebra) == stored, || {
                format!("{}: search output changed", p.display())
            })?;
            regenerated.insert(p);
        }
    }
    ensure(regenerated.len() == files.len(), || "stale fixtures in the search directory".into())?;
    let nt = nontrivial_fixtures();
    for (name, a) in &nt {
        ensure(!a.is_trivial().trivial, || format!("{name}: regression fixture is trivial"))?;
    }
    Ok(format!(
        "{} fixtures re-verified, {} nontrivial regression fixtures",
        files.len(),
        nt.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suite on the catalog", c1_axioms),
        ("integral identities", c2_integrals),
        ("idempotents from integrals", c3_idempotents),
        ("quasisymmetry cross-check", c4_quasisymmetry),
        ("change of groups", c5_change_group),
        ("structure suite", c6_structure_suite),
        ("triviality theorem", c7_triviality),
        ("trivial subalgebra extraction", c8_trivial_subalgebra),
        ("freeness of stability and core", c9_freeness),
        ("search soundness", c10_search),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let r = f();
        let secs = t0.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
