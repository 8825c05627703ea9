//! The Fourier elements w and u of a pair of idempotents, the ideals they describe in the
//! twisted square, and products of two characters.

use std::collections::BTreeSet;

use serde::Serialize;

use super::Analysis;
use crate::abgroup::{Elem, Subgroup};
use crate::checks::CheckList;
use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};
use crate::exactla::{
    dot, is_zero_vec, render_vec, span_rank, split_invariant, unit_vec, vaxpy, vscale, zero_vec,
    Mat, Vector,
};
use crate::ydmod::{flatten, outer, unflatten};

/// The orbits O = phi(Q_{e'}^perp) e and O' = psi(T_e^perp) e' of a pair.
pub(crate) struct PairData {
    pub te: Subgroup,
    pub qy: Subgroup,
    pub qyp: Subgroup,
    pub tep: Subgroup,
    pub orbit: Vec<usize>,
    pub orbit_p: Vec<usize>,
}

pub(crate) fn pair_data(an: &Analysis, x: usize, y: usize) -> PairData {
    let te = an.rec(x).inertia.clone();
    let qy = an.rec(y).isotropy.clone();
    let qyp = qy.perp();
    let tep = te.perp();
    let orbit: BTreeSet<usize> = qyp.elements().iter().map(|h| an.phi_idx(h, x)).collect();
    let orbit_p: BTreeSet<usize> = tep.elements().iter().map(|c| an.psi_idx(c, y)).collect();
    PairData {
        te,
        qy,
        qyp,
        tep,
        orbit: orbit.into_iter().collect(),
        orbit_p: orbit_p.into_iter().collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WuElements {
    pub e: usize,
    pub e_prime: usize,
    pub m: usize,
    /// w_gamma for every character gamma.
    pub w: Vec<(Elem, Vector)>,
    /// u_g for every g in G.
    pub u: Vec<(Elem, Vector)>,
    pub checks: CheckList,
}

/// w_gamma = 1/|T_e cap Q_{e'}^perp| sum_{g in Q_{e'}^perp} gamma(-g) phi_g(e) and
/// u_g = 1/|Q_{e'} cap T_e^perp| sum_{gamma in T_e^perp} gamma(-g) psi_gamma(e'), with the
/// properties of both families checked.
pub fn w_u_elements(an: &Analysis, x: usize, y: usize) -> Result<WuElements> {
    let (d, n) = (an.dim(), an.order());
    let grp = an.group();
    let module = an.algebra.module();
    let chi = |c: &Elem, g: &Elem| module.chi(c, g);
    let p = pair_data(an, x, y);
    let t_cap = p.te.intersect(&p.qyp);
    let q_cap = p.qy.intersect(&p.tep);
    let elems = an.elems().to_vec();

    let w_of = |gamma: &Elem| -> Vector {
        let mut acc = zero_vec(d, n);
        for h in p.qyp.elements() {
            vaxpy(&mut acc, &chi(gamma, &grp.neg(h)), an.e(an.phi_idx(h, x)));
        }
        vscale(&acc, &CycNum::from_frac(1, t_cap.order() as i64, n))
    };
    let u_of = |g: &Elem| -> Vector {
        let mut acc = zero_vec(d, n);
        for c in p.tep.elements() {
            vaxpy(&mut acc, &chi(c, &grp.neg(g)), an.e(an.psi_idx(c, y)));
        }
        vscale(&acc, &CycNum::from_frac(1, q_cap.order() as i64, n))
    };
    let ws: Vec<Vector> = elems.iter().map(w_of).collect();
    let us: Vec<Vector> = elems.iter().map(u_of).collect();
    let w = |c: &Elem| &ws[grp.index_of(c)];
    let u = |g: &Elem| &us[grp.index_of(g)];
    let m = p.orbit.len();
    let mut rep = CheckList::default();

    rep.push_bool(
        "orbits_same_size",
        p.orbit_p.len() == m && m == p.qyp.order() / t_cap.order(),
        || format!("|O| = {m}, |O'| = {}", p.orbit_p.len()),
    );
    let phi = |g: &Elem, v: &[CycNum]| module.phi(g).mul_vec(v);
    let psi = |c: &Elem, v: &[CycNum]| module.psi(c).mul_vec(v);

    let bad = elems.iter().find_map(|c| {
        p.qyp
            .elements()
            .iter()
            .find(|h| phi(h, w(c)) != vscale(w(c), &chi(c, h)))
            .map(|h| format!("gamma {c}, g {h}"))
    });
    rep.push_consequence("w_eigenvectors", bad);
    let bad = elems.iter().find_map(|c| {
        p.qy.elements()
            .iter()
            .find(|q| w(&grp.add(c, q)) != w(c))
            .map(|q| format!("gamma {c}, q {q}"))
    });
    rep.push_consequence("w_constant_on_cosets", bad);
    let w_supp = p.tep.join(&p.qy);
    let bad = elems
        .iter()
        .find(|c| is_zero_vec(w(c)) == w_supp.contains(c));
    rep.push_bool("w_support", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });
    let bad = w_supp
        .elements()
        .iter()
        .find(|c| !dot(an.eta(x), w(c)).is_one());
    rep.push_bool("w_normalized", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });
    let g_reps = p.qyp.coset_reps(&t_cap)?;
    let c_reps = p.tep.coset_reps(&q_cap)?;
    let bad = w_supp.elements().iter().find(|c| {
        let mut acc = zero_vec(d, n);
        for gi in &g_reps {
            vaxpy(&mut acc, &chi(c, &grp.neg(gi)), an.e(an.phi_idx(gi, x)));
        }
        acc != *w(c)
    });
    rep.push_bool("w_from_representatives", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });
    let i_basis = an.span_of(&p.orbit);
    let w_basis: Vec<Vector> = c_reps.iter().map(|c| w(c).clone()).collect();
    let ok = c_reps.len() == m
        && span_rank(&w_basis, d, n) == m
        && w_basis.iter().all(|v| super::spans(&i_basis, v, d, n));
    rep.push_bool("w_basis_of_ideal", ok, || {
        format!("{} representatives, rank {}", c_reps.len(), span_rank(&w_basis, d, n))
    });
    let inv_m = CycNum::from_frac(1, m as i64, n);
    let bad = p.qyp.elements().iter().find(|h| {
        let mut acc = zero_vec(d, n);
        for cj in &c_reps {
            vaxpy(&mut acc, &chi(cj, h), w(cj));
        }
        vscale(&acc, &inv_m) != *an.e(an.phi_idx(h, x))
    });
    rep.push_bool("w_inversion", bad.is_none(), || {
        format!("g {}", bad.unwrap())
    });
    let mut orbit_sum = zero_vec(d, n);
    for &o in &p.orbit {
        vaxpy(&mut orbit_sum, &CycNum::one(n), an.e(o));
    }
    rep.push_bool("w_unit_is_orbit_sum", *w(&grp.zero()) == orbit_sum, || {
        render_vec(w(&grp.zero()))
    });

    let bad = elems.iter().find_map(|g| {
        p.tep
            .elements()
            .iter()
            .find(|c| psi(c, u(g)) != vscale(u(g), &chi(c, g)))
            .map(|c| format!("g {g}, gamma {c}"))
    });
    rep.push_consequence("u_eigenvectors", bad);
    let bad = elems.iter().find_map(|g| {
        p.te.elements()
            .iter()
            .find(|t| u(&grp.add(g, t)) != u(g))
            .map(|t| format!("g {g}, t {t}"))
    });
    rep.push_consequence("u_constant_on_cosets", bad);
    let u_supp = p.qyp.join(&p.te);
    let bad = elems
        .iter()
        .find(|g| is_zero_vec(u(g)) == u_supp.contains(g));
    rep.push_bool("u_support", bad.is_none(), || format!("g {}", bad.unwrap()));
    let bad = u_supp
        .elements()
        .iter()
        .find(|g| !dot(an.eta(y), u(g)).is_one());
    rep.push_bool("u_normalized", bad.is_none(), || {
        format!("g {}", bad.unwrap())
    });
    let bad = u_supp.elements().iter().find(|g| {
        let mut acc = zero_vec(d, n);
        for cj in &c_reps {
            vaxpy(&mut acc, &chi(cj, &grp.neg(g)), an.e(an.psi_idx(cj, y)));
        }
        acc != *u(g)
    });
    rep.push_bool("u_from_representatives", bad.is_none(), || {
        format!("g {}", bad.unwrap())
    });
    let ip_basis = an.span_of(&p.orbit_p);
    let u_basis: Vec<Vector> = g_reps.iter().map(|g| u(g).clone()).collect();
    let ok = g_reps.len() == m
        && span_rank(&u_basis, d, n) == m
        && u_basis.iter().all(|v| super::spans(&ip_basis, v, d, n));
    rep.push_bool("u_basis_of_ideal", ok, || {
        format!("{} representatives, rank {}", g_reps.len(), span_rank(&u_basis, d, n))
    });
    let bad = p.tep.elements().iter().find(|c| {
        let mut acc = zero_vec(d, n);
        for gi in &g_reps {
            vaxpy(&mut acc, &chi(c, gi), u(gi));
        }
        vscale(&acc, &inv_m) != *an.e(an.psi_idx(c, y))
    });
    rep.push_bool("u_inversion", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });

    Ok(WuElements {
        e: x,
        e_prime: y,
        m,
        w: elems.iter().cloned().zip(ws.iter().cloned()).collect(),
        u: elems.iter().cloned().zip(us.iter().cloned()).collect(),
        checks: rep,
    })
}

/// Rows eta_x: maps input coordinates to idempotent coordinates.
fn eta_matrix(an: &Analysis) -> Mat {
    Mat::from_rows(
        (0..an.dim()).map(|x| an.eta(x).clone()).collect(),
        an.order(),
    )
}

/// Idempotent-basis support of a tensor in A (x) A.
fn tensor_support(eta: &Mat, t: &Mat) -> Vec<(usize, usize)> {
    let c = eta.mul(t).mul(&eta.transpose());
    let mut out = Vec::new();
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            if !c.get(i, j).is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Matrix of an operator on I = span(orbit) in the orbit basis, if I is invariant.
fn restrict_to_orbit(an: &Analysis, op: &Mat, orbit: &[usize]) -> Option<Mat> {
    let m = orbit.len();
    let mut out = Mat::zeros(m, m, an.order());
    for (c, &o) in orbit.iter().enumerate() {
        let img = an.idem_coords(&op.mul_vec(an.e(o)));
        for (y, v) in img.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let r = orbit.iter().position(|&z| z == y)?;
            out.set(r, c, v.clone());
        }
    }
    Some(out)
}

/// Dimension of the span of a family of m x m matrices.
fn matrix_span_rank(ms: &[Mat], order: u32) -> usize {
    let vs: Vec<Vector> = ms.iter().map(flatten).collect();
    let len = vs.first().map_or(0, |v| v.len());
    span_rank(&vs, len, order)
}

/// The ideal structure of A (x)^ A attached to (e, e'): the coaction support, the u-element
/// identity, the module structure through eta_{e'}, simplicity of I, and the two ideals
/// I (x) Ke' and I (x) I'. The checks needing the twisted square run only when
/// `config.tensor_ideals` is set.
pub fn ideal_structure_checks(an: &Analysis, x: usize, y: usize) -> Result<CheckList> {
    let (d, n) = (an.dim(), an.order());
    let grp = an.group();
    let module = an.algebra.module();
    let p = pair_data(an, x, y);
    let m = p.orbit.len();
    let mut rep = CheckList::default();

    let mut bad = None;
    'k: for k in 0..d {
        let ek = unit_vec(d, k, n);
        for h in an.elems() {
            let c = dot(an.eta(y), &module.projector(h).mul_vec(&ek));
            if !c.is_zero() && !p.qyp.contains(h) {
                bad = Some(format!("e{k} has degree {h} outside Q^perp"));
                break 'k;
            }
        }
    }
    rep.push_consequence("coaction_character_support", bad);

    let wu = w_u_elements(an, x, y)?;
    let mut bad = None;
    'a: for &a in &p.orbit {
        for (g, ug) in &wu.u {
            let mut lhs = Mat::zeros(d, d, n);
            for h in an.elems() {
                let ph = module.projector(h).mul_vec(ug);
                if is_zero_vec(&ph) {
                    continue;
                }
                lhs = lhs.add(&outer(&module.phi(h).mul_vec(an.e(a)), &ph, n));
            }
            if lhs != outer(&module.phi(g).mul_vec(an.e(a)), ug, n) {
                bad = Some(format!("a = e{a}, g = {g}"));
                break 'a;
            }
        }
    }
    rep.push_consequence("u_coaction_identity", bad);

    let ops = an.module_operators(y);
    let restricted: Vec<Option<Mat>> = ops
        .iter()
        .map(|op| restrict_to_orbit(an, op, &p.orbit))
        .collect();
    let invariant = restricted.iter().all(|r| r.is_some());
    rep.push_bool("orbit_ideal_is_submodule", invariant, || {
        format!("span of {:?} is not invariant", p.orbit)
    });
    if invariant {
        let ms: Vec<Mat> = restricted.into_iter().flatten().collect();
        let r = matrix_span_rank(&ms, n);
        rep.push_bool("orbit_ideal_burnside_rank", r == m * m, || {
            format!("rank {r}, expected {}", m * m)
        });
        if m <= an.config.subset_cap {
            let mut bad = None;
            for mask in 1u64..(1u64 << m) - 1 {
                let sub: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let closed = ms.iter().all(|op| {
                    sub.iter()
                        .all(|&c| (0..m).all(|r| op.get(r, c).is_zero() || sub.contains(&r)))
                });
                if closed {
                    bad = Some(format!(
                        "{:?} spans a proper submodule",
                        sub.iter().map(|&i| p.orbit[i]).collect::<Vec<_>>()
                    ));
                    break;
                }
            }
            rep.push_consequence("orbit_ideal_simple_exhaustive", bad);
        }
    }

    // the structure map I (x) I' -> End(I)
    let mut images = Vec::new();
    for &b in &p.orbit {
        for &bp in &p.orbit_p {
            let z = flatten(&outer(an.e(b), an.e(bp), n));
            match restrict_to_orbit(an, &an.tensor_operator(&ops, &z), &p.orbit) {
                Some(r) => images.push(r),
                None => images.push(Mat::zeros(m, m, n)),
            }
        }
    }
    let r = matrix_span_rank(&images, n);
    rep.push_bool("structure_map_bijective", r == m * m, || {
        format!("rank {r} of {} images, expected {}", images.len(), m * m)
    });

    if an.config.tensor_ideals {
        let tw = an.twisted_square();
        let dd = d * d;
        let eta = eta_matrix(an);
        let z = |k: usize| unit_vec(dd, k, n);

        let mut bad = None;
        'z: for k in 0..dd {
            for l in 0..dd {
                let lhs = an.tensor_operator(&ops, &tw.mul(&z(k), &z(l)));
                if lhs != ops[k].mul(&ops[l]) {
                    bad = Some(format!("z{k} z{l}"));
                    break 'z;
                }
            }
        }
        if bad.is_none() && an.tensor_operator(&ops, &tw.unit) != Mat::identity(d, n) {
            bad = Some("unit does not act as the identity".into());
        }
        rep.push_consequence("module_axioms", bad);

        let mut bad = None;
        'l: for k in 0..dd {
            for &b in &p.orbit {
                let t = flatten(&outer(an.e(b), an.e(y), n));
                let prod = unflatten(&tw.mul(&z(k), &t), d, d, n);
                if prod != outer(&ops[k].mul_vec(an.e(b)), an.e(y), n) {
                    bad = Some(format!("z{k} (e{b} (x) e{y}) is not the module action"));
                    break 'l;
                }
                if tensor_support(&eta, &prod)
                    .iter()
                    .any(|(i, j)| *j != y || !p.orbit.contains(i))
                {
                    bad = Some(format!("z{k} (e{b} (x) e{y}) leaves I (x) Ke'"));
                    break 'l;
                }
            }
        }
        rep.push_consequence("left_ideal_and_intertwiner", bad);

        let mut bad = None;
        'two: for k in 0..dd {
            for &b in &p.orbit {
                for &bp in &p.orbit_p {
                    let t = flatten(&outer(an.e(b), an.e(bp), n));
                    for (side, prod) in [("left", tw.mul(&z(k), &t)), ("right", tw.mul(&t, &z(k)))] {
                        let pm = unflatten(&prod, d, d, n);
                        if tensor_support(&eta, &pm)
                            .iter()
                            .any(|(i, j)| !p.orbit.contains(i) || !p.orbit_p.contains(j))
                        {
                            bad = Some(format!("{side} product of z{k} with e{b} (x) e{bp}"));
                            break 'two;
                        }
                    }
                }
            }
        }
        rep.push_consequence("two_sided_ideal", bad);
    }
    let _ = grp;
    Ok(rep)
}

/// Decomposition of I into one-dimensional A-modules along Delta and the resulting
/// characters omega_1..omega_m.
#[derive(Clone, Debug, Serialize)]
pub struct CharProduct {
    pub e: usize,
    pub e_prime: usize,
    pub m: usize,
    /// Idempotent indices of the omegas, ascending.
    pub omegas: Vec<usize>,
    /// Eigenvectors v_k in I, aligned with `omegas`.
    pub eigenvectors: Vec<Vector>,
    /// Coefficients of eta_e eta_{e'} in the omega basis, aligned with `omegas`.
    pub coefficients: Vec<CycNum>,
    pub checks: CheckList,
}

impl CharProduct {
    pub fn omega_set(&self) -> BTreeSet<usize> {
        self.omegas.iter().copied().collect()
    }
}

pub fn character_product(an: &Analysis, x: usize, y: usize) -> Result<CharProduct> {
    let (d, n) = (an.dim(), an.order());
    let p = pair_data(an, x, y);
    let m = p.orbit.len();
    let ops = an.module_operators(y);
    let dops = an.restricted_coproduct_operators(&ops);
    let spaces = split_invariant(&dops, d, n, Some(an.span_of(&p.orbit))).map_err(|err| match err {
        YdhError::PreconditionViolated(s) => YdhError::DecompositionFailure(s),
        other => other,
    })?;
    let mut pairs = Vec::new();
    for sp in spaces {
        if sp.basis.len() != 1 {
            return Err(YdhError::DecompositionFailure(format!(
                "eigenspace of dimension {} in I for e{x}, e{y}",
                sp.basis.len()
            )));
        }
        let k = an.char_index(&sp.eigenvalues).ok_or_else(|| {
            YdhError::DecompositionFailure(format!(
                "eigenvalues {} are not a character",
                render_vec(&sp.eigenvalues)
            ))
        })?;
        pairs.push((k, sp.basis[0].clone()));
    }
    pairs.sort_by_key(|p| p.0);
    let omegas: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let eigenvectors: Vec<Vector> = pairs.into_iter().map(|p| p.1).collect();
    let oset: BTreeSet<usize> = omegas.iter().copied().collect();
    let prod = an.cmul(an.eta(x), an.eta(y));
    let coords = an.char_coords(&prod);
    let coefficients: Vec<CycNum> = omegas.iter().map(|&k| coords[k].clone()).collect();

    let mut rep = CheckList::default();
    rep.push_bool(
        "omega_count_is_orbit_size",
        omegas.len() == m && oset.len() == m,
        || format!("{} omegas ({} distinct), |O| = {m}", omegas.len(), oset.len()),
    );
    let sup = an.char_support(&prod);
    rep.push_bool("product_in_omega_span", sup.is_subset(&oset), || {
        format!("support {sup:?}, omegas {omegas:?}")
    });
    rep.push_bool(
        "expansion_full_support",
        coefficients.iter().all(|c| !c.is_zero()),
        || format!("coefficients {}", render_vec(&coefficients)),
    );
    let mut prods = Vec::new();
    let mut bad = None;
    for &a in &p.orbit {
        for &b in &p.orbit_p {
            let f = an.cmul(an.eta(a), an.eta(b));
            if !an.char_support(&f).is_subset(&oset) && bad.is_none() {
                bad = Some(format!("eta{a} eta{b}"));
            }
            prods.push(f);
        }
    }
    rep.push_consequence("orbit_products_in_omega_span", bad);
    let r = span_rank(&prods, d, n);
    rep.push_bool("orbit_products_span_dimension", r == m, || {
        format!("rank {r}, m = {m}")
    });
    let stable = |set: &[usize], f: &dyn Fn(usize) -> usize| set.iter().all(|&o| set.contains(&f(o)));
    let bad = p.tep.elements().iter().find(|c| {
        stable(&p.orbit, &|o| an.psi_idx(c, o)) && !omegas.iter().all(|&k| oset.contains(&an.psi_star(c, k)))
    });
    rep.push_bool("omegas_psi_stable", bad.is_none(), || {
        format!("gamma {}", bad.unwrap())
    });
    let bad = p.qyp.elements().iter().find(|g| {
        stable(&p.orbit_p, &|o| an.phi_idx(g, o)) && !omegas.iter().all(|&k| oset.contains(&an.phi_star(g, k)))
    });
    rep.push_bool("omegas_phi_stable", bad.is_none(), || {
        format!("g {}", bad.unwrap())
    });

    Ok(CharProduct {
        e: x,
        e_prime: y,
        m: omegas.len(),
        omegas,
        eigenvectors,
        coefficients,
        checks: rep,
    })
}

/// (eta_e eta_{e'} is a character, Q_{e'}^perp in T_e, sigma(eta_e (x) eta_{e'}) is the flip),
/// which must agree.
pub fn character_product_criterion(an: &Analysis, x: usize, y: usize) -> Result<[bool; 3]> {
    let n = an.order();
    let is_char = an.char_index(&an.cmul(an.eta(x), an.eta(y))).is_some();
    let contained = an
        .rec(y)
        .isotropy
        .perp()
        .is_subset_of(&an.rec(x).inertia);
    let flipped =
        an.dual.braid(&outer(an.eta(x), an.eta(y), n)) == outer(an.eta(y), an.eta(x), n);
    let out = [is_char, contained, flipped];
    if out.iter().any(|&b| b != out[0]) {
        return Err(YdhError::EquivalenceViolation(format!(
            "e{x}, e{y}: product is a character {is_char}, Q'^perp in T {contained}, braiding is the flip {flipped}"
        )));
    }
    Ok(out)
}
