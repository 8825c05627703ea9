//! The antipode on ideals spanned by idempotents, stability subalgebras of the dual, and
//! cores.

use std::collections::BTreeSet;

use serde::Serialize;

use super::products::character_product;
use super::{spans, Analysis};
use crate::checks::CheckList;
use crate::cyclo::CycNum;
use crate::error::Result;
use crate::exactla::{same_span, unit_vec, vaxpy, vscale, zero_vec, Vector};
use crate::integrals::check_freeness;
use crate::ydhopf::{verify_axioms, YDHopfAlgebra};

fn subsets_containing(d: usize, x: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1u64 << d)
        .filter(move |mask| mask >> x & 1 == 1)
        .map(move |mask| (0..d).filter(|i| mask >> i & 1 == 1).collect())
}

/// For every idempotent subset X: S(span X) is an ideal iff X contains the orbit of each
/// of its members. All subsets up to the configured cap, orbits and singletons beyond it.
pub fn antipode_ideal_table(an: &Analysis) -> CheckList {
    let d = an.dim();
    let sets: Vec<Vec<usize>> = if d <= an.config.subset_cap {
        (1u64..1u64 << d)
            .map(|mask| (0..d).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut v: Vec<Vec<usize>> = (0..d).map(|x| vec![x]).collect();
        v.extend(an.records.iter().map(|r| r.orbit.clone()));
        v
    };
    let mut bad = None;
    for set in &sets {
        let closed = set
            .iter()
            .all(|&z| an.rec(z).orbit.iter().all(|o| set.contains(o)));
        let ideal = an.is_ideal(&an.s_all(&an.span_of(set)));
        if closed != ideal {
            bad = Some(format!(
                "{set:?}: orbit closed {closed}, image is an ideal {ideal}"
            ));
            break;
        }
    }
    let mut rep = CheckList::default();
    rep.push_consequence("antipode_image_ideal_criterion", bad);
    rep
}

/// The antipode on I_e and J_e: images are ideals, I_e is the smallest such ideal around e,
/// the two orbit descriptions agree, S^2 preserves I_e (also through the inverse ribbon
/// formula), S(e) is primitive exactly at index one, and Q_e^perp acts on the idempotents of
/// I_e and of S(I_e) by isomorphic permutation representations.
pub fn antipode_ideal_checks(an: &Analysis, x: usize) -> CheckList {
    let (d, n) = (an.dim(), an.order());
    let grp = an.group();
    let module = an.algebra.module();
    let r = an.rec(x);
    let mut rep = CheckList::default();
    let ie = an.span_of(&r.orbit);
    let sie = an.s_all(&ie);
    rep.push_bool("image_of_orbit_ideal_is_ideal", an.is_ideal(&sie), || {
        format!("S(I_e{x}) is not spanned by idempotents")
    });

    let mut bad = None;
    if d <= an.config.subset_cap {
        for set in subsets_containing(d, x) {
            if an.is_ideal(&an.s_all(&an.span_of(&set)))
                && !r.orbit.iter().all(|o| set.contains(o))
            {
                bad = Some(format!("S(span {set:?}) is an ideal"));
                break;
            }
        }
    } else if r.orbit.len() <= an.config.subset_cap {
        let pos = r.orbit.iter().position(|&o| o == x).unwrap();
        for sub in subsets_containing(r.orbit.len(), pos) {
            if sub.len() == r.orbit.len() {
                continue;
            }
            let set: Vec<usize> = sub.iter().map(|&i| r.orbit[i]).collect();
            if an.is_ideal(&an.s_all(&an.span_of(&set))) {
                bad = Some(format!("S(span {set:?}) is an ideal"));
                break;
            }
        }
    }
    rep.push_consequence("orbit_ideal_is_minimal", bad);

    let je = an.span_of(&an.complement(&r.orbit));
    rep.push_bool(
        "image_of_complement_is_ideal",
        an.is_ideal(&an.s_all(&je)),
        || format!("S(J_e{x}) is not an ideal"),
    );

    let tp = r.inertia.perp();
    let qp = r.isotropy.perp();
    let psi_orbit: BTreeSet<usize> = tp.elements().iter().map(|c| an.psi_idx(c, x)).collect();
    let phi_orbit: BTreeSet<usize> = r.orbit.iter().copied().collect();
    rep.push_bool("orbit_descriptions_agree", psi_orbit == phi_orbit, || {
        format!("phi orbit {phi_orbit:?}, psi orbit {psi_orbit:?}")
    });

    let s2ie = an.s_all(&sie);
    rep.push_bool("antipode_square_preserves_ideal", same_span(&s2ie, &ie, d, n), || {
        format!("S^2(I_e{x}) != I_e{x}")
    });
    let big = r.isotropy.join(&tp);
    let inv_g = CycNum::from_frac(1, grp.order() as i64, n);
    let bad = r.orbit.iter().find(|&&a| {
        let mut acc = zero_vec(d, n);
        for c in big.elements() {
            let pc = module.psi(c).mul_vec(an.e(a));
            for g in qp.elements() {
                vaxpy(&mut acc, &module.chi(c, &grp.neg(g)), &module.phi(g).mul_vec(&pc));
            }
        }
        vscale(&acc, &inv_g) != an.s(&an.s(an.e(a)))
    });
    rep.push_bool("inverse_ribbon_on_orbit", bad.is_none(), || {
        format!("e{}", bad.unwrap())
    });

    let se = an.s(an.e(x));
    let primitive = an.idempotent_index(&se).is_some();
    rep.push_bool("antipode_primitive_iff_index_one", primitive == (r.index == 1), || {
        format!("S(e{x}) primitive {primitive}, index {}", r.index)
    });

    // permutation representations of Q_e^perp on O_e and on the idempotents of S(I_e)
    let targets = an.ideal_idempotents(&sie);
    let mut bad = None;
    if targets.len() != r.orbit.len() {
        bad = Some(format!("{} vs {} points", r.orbit.len(), targets.len()));
    }
    let transitive = |pts: &[usize]| {
        let orb: BTreeSet<usize> = qp.elements().iter().map(|g| an.phi_idx(g, pts[0])).collect();
        orb.len() == pts.len() && orb.iter().all(|p| pts.contains(p))
    };
    if bad.is_none() && !(transitive(&r.orbit) && transitive(&targets)) {
        bad = Some("an action is not transitive".into());
    }
    if bad.is_none() {
        for g in qp.elements() {
            let fix = |pts: &[usize]| pts.iter().filter(|&&p| an.phi_idx(g, p) == p).count();
            let (f1, f2) = (fix(&r.orbit), fix(&targets));
            if f1 != f2 || (f1 == r.orbit.len()) != (f2 == targets.len()) {
                bad = Some(format!("g {g}: {f1} vs {f2} fixed points"));
                break;
            }
        }
    }
    rep.push_consequence("permutation_representations_isomorphic", bad);
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityRecord {
    pub e: usize,
    /// The stability set, whose characters span the subalgebra.
    pub members: Vec<usize>,
    pub dim: usize,
    pub freeness_rank: usize,
    #[serde(skip)]
    pub algebra: YDHopfAlgebra,
    /// The same structure over the index group.
    #[serde(skip)]
    pub over_index_group: YDHopfAlgebra,
    pub checks: CheckList,
}

/// span of the characters of the stability set as a subalgebra of A*, verified over G and
/// over the index group.
pub fn stability_subalgebra(an: &Analysis, x: usize) -> Result<StabilityRecord> {
    let d = an.dim();
    let r = an.rec(x);
    let members = r.stability_set.clone();
    let basis = an.chars_of(&members);
    let sub = an.dual.subalgebra(&basis)?;
    let mut rep = CheckList::default();
    let lam = an.lambda_index();
    rep.push_bool("contains_counit", members.contains(&lam), || {
        format!("e{lam} missing from {members:?}")
    });
    rep.extend_prefixed("axioms", verify_axioms(&sub));
    let over = sub.change_group(&r.inertia, &r.isotropy)?;
    rep.extend_prefixed("over_index_group", verify_axioms(&over));
    let og = over.module().group().order();
    rep.push_bool("index_group_order", og == r.index, || {
        format!("|G'| = {og}, index {}", r.index)
    });
    if r.index == 1 {
        let mut bad = None;
        'p: for &a in &members {
            match an.char_index(an.eta_inv(a)) {
                Some(i) if members.contains(&i) => {}
                _ => {
                    bad = Some(format!("inverse of eta{a}"));
                    break;
                }
            }
            for &b in &members {
                match an.char_index(&an.cmul(an.eta(a), an.eta(b))) {
                    Some(i) if members.contains(&i) => {}
                    _ => {
                        bad = Some(format!("eta{a} eta{b}"));
                        break 'p;
                    }
                }
            }
        }
        rep.push_consequence("characters_form_group", bad);
        let (t1, t2) = (sub.is_trivial(), over.is_trivial());
        rep.push_bool("index_one_gives_trivial", t1.trivial && t2.trivial, || {
            format!("witnesses {:?} {:?}", t1.witness, t2.witness)
        });
    }
    let fr = check_freeness(&an.dual, &basis)?;
    rep.push_bool("dimension_divides", d % members.len() == 0, || {
        format!("{} does not divide {d}", members.len())
    });
    rep.extend_prefixed("freeness", fr.checks);
    Ok(StabilityRecord {
        e: x,
        dim: members.len(),
        members,
        freeness_rank: fr.rank,
        algebra: sub,
        over_index_group: over,
        checks: rep,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreRecord {
    pub e: usize,
    pub e_prime: usize,
    pub m: usize,
    /// Idempotents whose characters span the core.
    pub omegas: Vec<usize>,
    pub core_basis: Vec<Vector>,
    pub verified_subalgebra: bool,
    pub freeness_rank: usize,
    pub index_divides_dim: bool,
    pub checks: CheckList,
}

/// span(U_e U_{e'}) for the first idempotent e' of S(I_e), with the dual-ideal properties,
/// independence of the choice of e', the subalgebra property over the index group and the
/// divisibility of dim A by m.
pub fn core(an: &Analysis, x: usize) -> Result<CoreRecord> {
    let (d, n) = (an.dim(), an.order());
    let r = an.rec(x);
    let sie = an.s_all(&an.span_of(&r.orbit));
    let cands: Vec<usize> = (0..d).filter(|&y| spans(&sie, an.e(y), d, n)).collect();
    let Some(&y) = cands.first() else {
        return Err(crate::error::violation(
            "S(I_e) contains a primitive idempotent",
            format!("e{x}"),
        ));
    };
    let cp = character_product(an, x, y)?;
    let oset = cp.omega_set();
    let m = cp.m;
    let mut rep = CheckList::default();
    rep.extend_prefixed("character_product", cp.checks.clone());

    if let Some(&y2) = cands.get(1) {
        let cp2 = character_product(an, x, y2)?;
        rep.push_bool("choice_independent", cp2.omega_set() == oset, || {
            format!("e{y}: {:?}, e{y2}: {:?}", cp.omegas, cp2.omegas)
        });
    }

    let ry = an.rec(y);
    rep.push_bool(
        "same_stabilizers",
        r.inertia == ry.inertia && r.isotropy == ry.isotropy,
        || format!("e{x} vs e{y}"),
    );
    rep.push_bool(
        "image_is_orbit_ideal",
        same_span(&an.span_of(&ry.orbit), &sie, d, n),
        || format!("S(I_e{x}) != I_e{y}"),
    );
    let jx = an.span_of(&an.complement(&r.orbit));
    let jy = an.span_of(&an.complement(&ry.orbit));
    rep.push_bool(
        "complements_exchanged",
        same_span(&an.s_all(&jx), &jy, d, n) && same_span(&an.s_all(&jy), &jx, d, n),
        || "S(J_e) != J_e' or S(J_e') != J_e".into(),
    );

    rep.push_bool(
        "omegas_in_stability_set",
        cp.omegas.iter().all(|k| r.stability_set.contains(k)),
        || format!("{:?} vs {:?}", cp.omegas, r.stability_set),
    );
    let tp = r.inertia.perp();
    let qp = r.isotropy.perp();
    let bad = tp
        .elements()
        .iter()
        .find(|c| !cp.omegas.iter().all(|&k| oset.contains(&an.psi_star(c, k))));
    rep.push_bool("omegas_psi_stable", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });
    let bad = qp
        .elements()
        .iter()
        .find(|g| !cp.omegas.iter().all(|&k| oset.contains(&an.phi_star(g, k))));
    rep.push_bool("omegas_phi_stable", bad.is_none(), || {
        format!("g {}", bad.unwrap())
    });
    let lam = an.lambda_index();
    rep.push_bool("counit_among_omegas", oset.contains(&lam), || {
        format!("e{lam} not in {:?}", cp.omegas)
    });
    // S^-1(e') = Lambda_(1) eta_{e'}(Lambda_(2)) is an eigenvector with character eps
    let v = an.algebra.delta(&an.integrals.element).mul_vec(an.eta(y));
    let ops = an.module_operators(y);
    let dops = an.restricted_coproduct_operators(&ops);
    let eps = an.algebra.counit();
    let ok = v == an.antipode_inv.mul_vec(an.e(y))
        && spans(&an.span_of(&r.orbit), &v, d, n)
        && dops
            .iter()
            .enumerate()
            .all(|(k, op)| op.mul_vec(&v) == vscale(&v, &eps[k]));
    rep.push_bool("counit_eigenvector", ok, || {
        "Lambda_(1) eta_e'(Lambda_(2)) is not S^-1(e') with character eps".into()
    });
    let bad = cp.omegas.iter().find(|&&k| m > 1 && an.rec(k).index >= m);
    rep.push_bool("omega_indices_smaller", bad.is_none(), || {
        let k = *bad.unwrap();
        format!("e{k} has index {} >= {m}", an.rec(k).index)
    });

    let inv: BTreeSet<Option<usize>> = cp
        .omegas
        .iter()
        .map(|&k| an.char_index(an.eta_inv(k)))
        .collect();
    let want: BTreeSet<Option<usize>> = oset.iter().map(|&k| Some(k)).collect();
    rep.push_bool("omegas_closed_under_inverse", inv == want, || {
        format!("{inv:?}")
    });

    let ux = an.chars_of(&r.orbit);
    let uy = an.chars_of(&ry.orbit);
    let mut bad = None;
    for &k in &cp.omegas {
        let w = an.eta(k);
        for (name, u) in [("e", &ux), ("e'", &uy)] {
            let left: Vec<Vector> = u.iter().map(|f| an.cmul(w, f)).collect();
            let right: Vec<Vector> = u.iter().map(|f| an.cmul(f, w)).collect();
            if !same_span(&left, u, d, n) || !same_span(&right, u, d, n) {
                bad = Some(format!("omega e{k} on J_{name}^perp"));
            }
        }
    }
    rep.push_consequence("omegas_preserve_dual_ideals", bad);
    let omega_vecs = an.chars_of(&cp.omegas);
    let prods = |a: &[Vector], b: &[Vector]| -> Vec<Vector> {
        a.iter()
            .flat_map(|f| b.iter().map(move |g| (f, g)))
            .map(|(f, g)| an.cmul(f, g))
            .collect()
    };
    rep.push_bool(
        "core_spans_agree",
        same_span(&prods(&ux, &uy), &omega_vecs, d, n)
            && same_span(&prods(&uy, &ux), &omega_vecs, d, n),
        || "span(U_e U_e') or span(U_e' U_e) differs from the core".into(),
    );

    let stab = stability_subalgebra(an, x)?;
    let coords: Vec<Vector> = cp
        .omegas
        .iter()
        .map(|k| {
            let pos = stab.members.iter().position(|z| z == k).unwrap_or(0);
            unit_vec(stab.dim, pos, n)
        })
        .collect();
    let verified = match stab.over_index_group.subalgebra(&coords) {
        Ok(c) => {
            let axioms = verify_axioms(&c);
            let ok = axioms.passed();
            rep.push_bool("core_is_subalgebra_over_index_group", ok, || {
                format!("{:?}", axioms.failures().first().map(|c| &c.name))
            });
            ok
        }
        Err(err) => {
            rep.push_consequence("core_is_subalgebra_over_index_group", Some(err.to_string()));
            false
        }
    };
    let fr = check_freeness(&an.dual, &omega_vecs)?;
    let divides = d % m == 0 && fr.rank * m == d;
    rep.push_bool("index_divides_dimension", divides, || {
        format!("m = {m}, dim = {d}, rank {}", fr.rank)
    });
    rep.extend_prefixed("freeness", fr.checks);

    Ok(CoreRecord {
        e: x,
        e_prime: y,
        m,
        omegas: cp.omegas,
        core_basis: omega_vecs,
        verified_subalgebra: verified,
        freeness_rank: fr.rank,
        index_divides_dim: divides,
        checks: rep,
    })
}
