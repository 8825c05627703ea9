//! Structure of commutative semisimple Yetter-Drinfeld Hopf algebras over K[G], G finite
//! abelian: primitive idempotents and their characters, the group-theoretic invariants
//! attached to each idempotent, ideals of the twisted square, products of characters, the
//! antipode on ideals, stability subalgebras and cores of the dual, and the two triviality
//! results built on them.
//!
//! All work happens in two coordinate systems: the input basis of A (vectors) and the
//! idempotent basis, in which a vector a has coordinates eta_y(a).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::abgroup::{Elem, FinAbGroup, Side, Subgroup};
use crate::checks::CheckList;
use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};
use crate::exactla::{
    dot, is_zero_vec, render_vec, span_rank, split_invariant, unit_vec, vaxpy, vscale, zero_vec,
    Mat, Vector,
};
use crate::integrals::{compute_integrals, IntegralPair};
use crate::ydhopf::{AssocAlgebra, YDHopfAlgebra};
use crate::ydmod::YdSide;

mod antipode;
mod products;
mod suite;
mod theorems;

pub use antipode::{antipode_ideal_checks, antipode_ideal_table, core, stability_subalgebra, CoreRecord, StabilityRecord};
pub use products::{
    character_product, character_product_criterion, ideal_structure_checks, w_u_elements,
    CharProduct, WuElements,
};
pub use suite::{analyze, AnalysisReport};
pub use theorems::{check_triviality_theorem, find_trivial_subalgebra, TrivialSubalgebra};

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisConfig {
    /// Exhaustive subset enumeration is used up to this many idempotents.
    pub subset_cap: usize,
    /// Run the checks that need the twisted square A (x)^ A.
    pub tensor_ideals: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            subset_cap: 12,
            tensor_ideals: true,
        }
    }
}

/// One primitive idempotent with its character and invariants.
#[derive(Clone, Debug, Serialize)]
pub struct IdempotentRecord {
    pub id: usize,
    pub e: Vector,
    pub eta: Vector,
    /// eta composed with the antipode.
    pub eta_inverse: Vector,
    /// {g : phi_g(e) = e}
    #[serde(rename = "T_e")]
    pub inertia: Subgroup,
    /// {gamma : psi_gamma(e) = e}
    #[serde(rename = "Q_e")]
    pub isotropy: Subgroup,
    pub index_group: FinAbGroup,
    pub index: usize,
    pub orbit: Vec<usize>,
    pub full_orbit: Vec<usize>,
    pub stability_set: Vec<usize>,
}

/// The analyzer state for one commutative semisimple left algebra.
#[derive(Debug)]
pub struct Analysis {
    pub algebra: YDHopfAlgebra,
    /// The dual, a right Yetter-Drinfeld Hopf algebra.
    pub dual: YDHopfAlgebra,
    pub integrals: IntegralPair,
    pub antipode: Mat,
    pub antipode_inv: Mat,
    pub records: Vec<IdempotentRecord>,
    pub config: AnalysisConfig,
    elems: Vec<Elem>,
    // [group element index][idempotent] -> idempotent
    phi_perm: Vec<Vec<usize>>,
    psi_perm: Vec<Vec<usize>>,
    twisted: OnceLock<AssocAlgebra>,
}

fn lex_cmp(a: &[CycNum], b: &[CycNum]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn is_idempotent_form(a: &YDHopfAlgebra) -> bool {
    let d = a.dim();
    let prod = a.algebra().product;
    (0..d).all(|i| {
        (0..d).all(|j| {
            let entry = prod.entry(i, j);
            if i == j {
                entry.len() == 1 && entry[0].0 == i && entry[0].1.is_one()
            } else {
                entry.is_empty()
            }
        })
    })
}

/// Pairs (e, eta) of primitive idempotents and characters, unsorted.
fn wedderburn(a: &YDHopfAlgebra) -> Result<Vec<(Vector, Vector)>> {
    let d = a.dim();
    let n = a.order();
    if is_idempotent_form(a) {
        return Ok((0..d)
            .map(|i| (unit_vec(d, i, n), unit_vec(d, i, n)))
            .collect());
    }
    let prod = a.algebra().product;
    let ops: Vec<Mat> = (0..d)
        .map(|k| prod.left_matrix(&unit_vec(d, k, n)))
        .collect();
    let spaces = split_invariant(&ops, d, n, None)?;
    let mut out = Vec::new();
    for sp in spaces {
        if sp.basis.len() != 1 {
            return Err(YdhError::DecompositionFailure(format!(
                "joint eigenspace of dimension {} for eigenvalues {}",
                sp.basis.len(),
                render_vec(&sp.eigenvalues)
            )));
        }
        let v = &sp.basis[0];
        let eta = sp.eigenvalues;
        let c = dot(&eta, v);
        let inv = c.inv().map_err(|_| YdhError::NotSemisimple)?;
        out.push((vscale(v, &inv), eta));
    }
    Ok(out)
}

fn perm_of(op: &Mat, es: &[Vector]) -> Result<Vec<usize>> {
    es.iter()
        .map(|e| {
            let img = op.mul_vec(e);
            es.iter().position(|f| *f == img).ok_or_else(|| {
                crate::error::violation(
                    "automorphisms permute the primitive idempotents",
                    format!("image {} is not a primitive idempotent", render_vec(&img)),
                )
            })
        })
        .collect()
}

impl Analysis {
    pub fn new(a: &YDHopfAlgebra) -> Result<Analysis> {
        Analysis::with_config(a, AnalysisConfig::default())
    }

    pub fn with_config(a: &YDHopfAlgebra, config: AnalysisConfig) -> Result<Analysis> {
        let algebra = match a.side() {
            YdSide::Left => a.clone(),
            YdSide::Right => a.to_left_over_dual()?,
        };
        let d = algebra.dim();
        let alg = algebra.algebra();
        if !alg.is_commutative() {
            let (i, j) = (0..d)
                .flat_map(|i| (0..i).map(move |j| (i, j)))
                .find(|&(i, j)| alg.product.entry(i, j) != alg.product.entry(j, i))
                .unwrap();
            return Err(YdhError::NotCommutative(format!("e{i} e{j} != e{j} e{i}")));
        }
        let integrals = compute_integrals(&algebra)?;
        let antipode = algebra.antipode_or_solve()?;
        let antipode_inv = antipode.inverse()?;
        let algebra = algebra.with_antipode(Some(antipode.clone()));
        let dual = algebra.dualize();

        let mut pairs = wedderburn(&algebra)?;
        pairs.sort_by(|x, y| lex_cmp(&y.1, &x.1));
        let es: Vec<Vector> = pairs.iter().map(|p| p.0.clone()).collect();
        let grp = algebra.module().group().clone();
        let elems = grp.elements();
        let mut phi_perm = Vec::new();
        let mut psi_perm = Vec::new();
        for g in &elems {
            phi_perm.push(perm_of(algebra.module().phi(g), &es)?);
            psi_perm.push(perm_of(algebra.module().psi(g), &es)?);
        }

        let mut records = Vec::new();
        for (id, (e, eta)) in pairs.into_iter().enumerate() {
            let fixed = |perms: &[Vec<usize>]| -> Vec<Elem> {
                elems
                    .iter()
                    .zip(perms)
                    .filter(|(_, p)| p[id] == id)
                    .map(|(g, _)| g.clone())
                    .collect()
            };
            let inertia = Subgroup::from_elements(&grp, Side::Group, fixed(&phi_perm))?;
            let isotropy = Subgroup::from_elements(&grp, Side::Dual, fixed(&psi_perm))?;
            let qp = isotropy.perp();
            let index_group = qp.quotient(&inertia.intersect(&qp))?.target;
            let index = index_group.order();
            let orbit: BTreeSet<usize> = qp
                .elements()
                .iter()
                .map(|g| phi_perm[grp.index_of(g)][id])
                .collect();
            let mut full = BTreeSet::new();
            for p in &phi_perm {
                for q in &psi_perm {
                    full.insert(q[p[id]]);
                }
            }
            records.push(IdempotentRecord {
                id,
                eta_inverse: antipode.vec_mul(&eta),
                e,
                eta,
                inertia,
                isotropy,
                index_group,
                index,
                orbit: orbit.into_iter().collect(),
                full_orbit: full.into_iter().collect(),
                stability_set: vec![],
            });
        }
        for x in 0..records.len() {
            let set = (0..records.len())
                .filter(|&y| {
                    records[x].inertia.is_subset_of(&records[y].inertia)
                        && records[x].isotropy.is_subset_of(&records[y].isotropy)
                })
                .collect();
            records[x].stability_set = set;
        }
        Ok(Analysis {
            algebra,
            dual,
            integrals,
            antipode,
            antipode_inv,
            records,
            config,
            elems,
            phi_perm,
            psi_perm,
            twisted: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn order(&self) -> u32 {
        self.algebra.order()
    }

    pub fn group(&self) -> &FinAbGroup {
        self.algebra.module().group()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn e(&self, x: usize) -> &Vector {
        &self.records[x].e
    }

    pub fn eta(&self, x: usize) -> &Vector {
        &self.records[x].eta
    }

    pub fn rec(&self, x: usize) -> &IdempotentRecord {
        &self.records[x]
    }

    /// Index of phi_g(e_x).
    pub fn phi_idx(&self, g: &Elem, x: usize) -> usize {
        self.phi_perm[self.group().index_of(g)][x]
    }

    /// Index of psi_gamma(e_x).
    pub fn psi_idx(&self, gamma: &Elem, x: usize) -> usize {
        self.psi_perm[self.group().index_of(gamma)][x]
    }

    /// eta_x composed with phi_g, as an idempotent index: it is the character of
    /// phi_{-g}(e_x).
    pub fn phi_star(&self, g: &Elem, x: usize) -> usize {
        self.phi_idx(&self.group().neg(g), x)
    }

    pub fn psi_star(&self, gamma: &Elem, x: usize) -> usize {
        self.psi_idx(&self.group().neg(gamma), x)
    }

    /// The primitive idempotent equal to `v`, if any.
    pub fn idempotent_index(&self, v: &[CycNum]) -> Option<usize> {
        self.records.iter().position(|r| r.e == v)
    }

    /// The primitive idempotent whose character is `f`, if `f` is a character.
    pub fn char_index(&self, f: &[CycNum]) -> Option<usize> {
        self.records.iter().position(|r| r.eta == f)
    }

    /// The idempotent of the integral, whose character is the counit.
    pub fn lambda_index(&self) -> usize {
        self.char_index(self.algebra.counit())
            .expect("the counit is a character")
    }

    /// Coordinates eta_y(v) of a vector in the idempotent basis.
    pub fn idem_coords(&self, v: &[CycNum]) -> Vector {
        self.records.iter().map(|r| dot(&r.eta, v)).collect()
    }

    /// Coordinates f(e_y) of a covector in the character basis.
    pub fn char_coords(&self, f: &[CycNum]) -> Vector {
        self.records.iter().map(|r| dot(f, &r.e)).collect()
    }

    /// Idempotents with a nonzero coordinate in v.
    pub fn support(&self, v: &[CycNum]) -> BTreeSet<usize> {
        self.idem_coords(v)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Characters with a nonzero coefficient in f.
    pub fn char_support(&self, f: &[CycNum]) -> BTreeSet<usize> {
        self.char_coords(f)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn span_of(&self, ids: &[usize]) -> Vec<Vector> {
        ids.iter().map(|&i| self.e(i).clone()).collect()
    }

    pub fn chars_of(&self, ids: &[usize]) -> Vec<Vector> {
        ids.iter().map(|&i| self.eta(i).clone()).collect()
    }

    /// Idempotents outside `ids`, spanning the complementary ideal.
    pub fn complement(&self, ids: &[usize]) -> Vec<usize> {
        (0..self.records.len()).filter(|i| !ids.contains(i)).collect()
    }

    /// Whether span(vs) is an ideal: ideals are spanned by the idempotents they contain, so
    /// this holds iff the span has the dimension of the union of supports.
    pub fn is_ideal(&self, vs: &[Vector]) -> bool {
        let mut sup = BTreeSet::new();
        for v in vs {
            sup.extend(self.support(v));
        }
        span_rank(vs, self.dim(), self.order()) == sup.len()
    }

    /// Idempotents spanning the ideal span(vs), assumed to be an ideal.
    pub fn ideal_idempotents(&self, vs: &[Vector]) -> Vec<usize> {
        let mut sup = BTreeSet::new();
        for v in vs {
            sup.extend(self.support(v));
        }
        sup.into_iter().collect()
    }

    pub fn s(&self, v: &[CycNum]) -> Vector {
        self.antipode.mul_vec(v)
    }

    pub fn s_all(&self, vs: &[Vector]) -> Vec<Vector> {
        vs.iter().map(|v| self.s(v)).collect()
    }

    /// Product in A*.
    pub fn cmul(&self, f: &[CycNum], g: &[CycNum]) -> Vector {
        self.dual.mul(f, g)
    }

    pub fn eta_inv(&self, x: usize) -> &Vector {
        &self.records[x].eta_inverse
    }

    /// The twisted square, built once.
    pub fn twisted_square(&self) -> &AssocAlgebra {
        self.twisted.get_or_init(|| self.algebra.twisted_square())
    }

    /// Sum over h of eta_y(P_h a) phi_h, the operator b -> a^(1).b eta_y(a^(2)).
    pub fn coaction_operator(&self, y: usize, a: &[CycNum]) -> Mat {
        let m = self.algebra.module();
        let (d, n) = (self.dim(), self.order());
        let mut acc = Mat::zeros(d, d, n);
        for h in &self.elems {
            let c = dot(self.eta(y), &m.projector(h).mul_vec(a));
            if !c.is_zero() {
                acc = acc.add(&m.phi(h).scale(&c));
            }
        }
        acc
    }

    /// The action of e_i (x) e_j on A through the character eta_y, indexed i * dim + j:
    /// (a (x) a').b = a (a'^(1).b) eta_y(a'^(2)).
    pub fn module_operators(&self, y: usize) -> Vec<Mat> {
        let (d, n) = (self.dim(), self.order());
        let prod = self.algebra.algebra().product;
        let lefts: Vec<Mat> = (0..d)
            .map(|i| prod.left_matrix(&unit_vec(d, i, n)))
            .collect();
        let psis: Vec<Mat> = (0..d)
            .map(|j| self.coaction_operator(y, &unit_vec(d, j, n)))
            .collect();
        let mut out = Vec::with_capacity(d * d);
        for l in &lefts {
            for p in &psis {
                out.push(l.mul(p));
            }
        }
        out
    }

    /// The operator of a general tensor (flattened) through `module_operators`.
    pub fn tensor_operator(&self, ops: &[Mat], z: &[CycNum]) -> Mat {
        let d = self.dim();
        let mut acc = Mat::zeros(d, d, self.order());
        for (c, op) in z.iter().zip(ops) {
            if !c.is_zero() {
                acc = acc.add(&op.scale(c));
            }
        }
        acc
    }

    /// Characters of A acting on A through Delta and the module structure of eta_y:
    /// D_k = sum Delta(e_k)_{ij} (e_i (x) e_j).
    pub fn restricted_coproduct_operators(&self, ops: &[Mat]) -> Vec<Mat> {
        let (d, n) = (self.dim(), self.order());
        (0..d)
            .map(|k| {
                let dk = self.algebra.delta(&unit_vec(d, k, n));
                self.tensor_operator(ops, &crate::ydmod::flatten(&dk))
            })
            .collect()
    }

    /// Checks that do not depend on a chosen idempotent.
    pub fn basic_checks(&self) -> CheckList {
        let (d, n) = (self.dim(), self.order());
        let mut rep = CheckList::default();
        let one = CycNum::one(n);
        let mut sum = zero_vec(d, n);
        let mut bad = None;
        for x in 0..d {
            vaxpy(&mut sum, &one, self.e(x));
            for y in 0..d {
                let p = self.algebra.mul(self.e(x), self.e(y));
                let want = if x == y {
                    self.e(x).clone()
                } else {
                    zero_vec(d, n)
                };
                if p != want && bad.is_none() {
                    bad = Some(format!("e{x} e{y}"));
                }
                let v = dot(self.eta(x), self.e(y));
                if (x == y && !v.is_one()) || (x != y && !v.is_zero()) {
                    bad.get_or_insert(format!("eta{x}(e{y}) = {}", v.render()));
                }
            }
            let fx = self.eta(x);
            for i in 0..d {
                for j in 0..d {
                    let ei = unit_vec(d, i, n);
                    let ej = unit_vec(d, j, n);
                    let lhs = dot(fx, &self.algebra.mul(&ei, &ej));
                    if lhs != &dot(fx, &ei) * &dot(fx, &ej) && bad.is_none() {
                        bad = Some(format!("eta{x} is not multiplicative at e{i} e{j}"));
                    }
                }
            }
        }
        rep.push_consequence("orthogonal_idempotents", bad);
        rep.push_bool("idempotents_sum_to_one", sum == *self.algebra.unit(), || {
            render_vec(&sum)
        });

        let mut bad = None;
        'outer: for p in &self.phi_perm {
            for q in &self.psi_perm {
                if (0..d).any(|x| p[q[x]] != q[p[x]]) {
                    bad = Some(format!("{p:?} and {q:?}"));
                    break 'outer;
                }
            }
        }
        rep.push_consequence("permutations_commute", bad);

        let g = self.group();
        let bad = self.records.iter().find(|r| {
            r.orbit.len() != r.index
                || g.order() % r.index != 0
                || !r.orbit.iter().all(|x| r.full_orbit.contains(x))
                || !r.full_orbit.iter().all(|x| r.stability_set.contains(x))
        });
        rep.push_bool("orbit_bookkeeping", bad.is_none(), || {
            let r = bad.unwrap();
            format!(
                "e{}: |O| = {}, index = {}, O {:?}, full {:?}, stability {:?}",
                r.id, r.orbit.len(), r.index, r.orbit, r.full_orbit, r.stability_set
            )
        });
        let bad = self.records.iter().find_map(|r| {
            for set in [&r.full_orbit, &r.stability_set] {
                for x in set.iter() {
                    for k in 0..self.elems.len() {
                        if !set.contains(&self.phi_perm[k][*x]) || !set.contains(&self.psi_perm[k][*x])
                        {
                            return Some(r.id);
                        }
                    }
                }
            }
            None
        });
        rep.push_bool("orbit_sets_stable", bad.is_none(), || {
            format!("e{}", bad.unwrap())
        });

        let bad = (0..d).find(|&x| !dot(&self.integrals.functional, self.e(x)).is_one());
        rep.push_bool("functional_on_idempotents", bad.is_none(), || {
            format!("lambda(e{}) != 1", bad.unwrap())
        });
        let mut bad = None;
        for x in 0..d {
            match idempotent_from_character(&self.algebra, self.eta(x), &self.integrals.element) {
                Ok(v) if v == *self.e(x) => {}
                Ok(v) => {
                    bad = Some(format!("e{x}: formulas give {}", render_vec(&v)));
                    break;
                }
                Err(err) => {
                    bad = Some(format!("e{x}: {err}"));
                    break;
                }
            }
        }
        rep.push_consequence("idempotents_from_characters", bad);
        rep.push_consequence("reciprocity", reciprocity_check(self).err());

        // S^2(a) = a^(1).a^(2)
        let m = self.algebra.module();
        let s2 = self.antipode.mul(&self.antipode);
        let mut theta = Mat::zeros(d, d, n);
        for h in &self.elems {
            theta = theta.add(&m.phi(h).mul(m.projector(h)));
        }
        rep.push_bool("antipode_square_is_inverse_ribbon", s2 == theta, || {
            "S^2 != sum_h phi_h P_h".into()
        });
        rep.push_bool("integral_is_primitive_idempotent", self.idempotent_index(&self.integrals.element).is_some(), || {
            render_vec(&self.integrals.element)
        });
        rep
    }
}

/// Primitive idempotents of a commutative semisimple algebra with their invariants.
pub fn primitive_idempotents(a: &YDHopfAlgebra) -> Result<Vec<IdempotentRecord>> {
    Ok(Analysis::new(a)?.records)
}

/// The idempotent with character `eta` from the integral `lambda`, by all four forms
/// eta^-1(L_(1)) L_(2), eta(L_(1)) S(L_(2)), L_(1) eta^-1(L_(2)), S(L_(1)) eta(L_(2)).
pub fn idempotent_from_character(
    a: &YDHopfAlgebra,
    eta: &[CycNum],
    lambda: &[CycNum],
) -> Result<Vector> {
    let s = a.antipode_or_solve()?;
    let dl = a.delta(lambda);
    let inv = s.vec_mul(eta);
    let forms = [
        dl.vec_mul(&inv),
        s.mul_vec(&dl.vec_mul(eta)),
        dl.mul_vec(&inv),
        s.mul_vec(&dl.mul_vec(eta)),
    ];
    if let Some(k) = (1..4).find(|&k| forms[k] != forms[0]) {
        return Err(YdhError::FormulaMismatch(format!(
            "form 1 gives {}, form {} gives {}",
            render_vec(&forms[0]),
            k + 1,
            render_vec(&forms[k])
        )));
    }
    let [f, ..] = forms;
    Ok(f)
}

/// eta_x^-1(e_y) = eta_y^-1(e_x) for all pairs; the witness names the first failing pair.
pub fn reciprocity_check(an: &Analysis) -> std::result::Result<(), String> {
    let d = an.dim();
    for x in 0..d {
        for y in 0..x {
            let l = dot(an.eta_inv(x), an.e(y));
            let r = dot(an.eta_inv(y), an.e(x));
            if l != r {
                return Err(format!(
                    "eta{x}^-1(e{y}) = {} vs eta{y}^-1(e{x}) = {}",
                    l.render(),
                    r.render()
                ));
            }
        }
    }
    Ok(())
}

/// Whether `v` lies in the span of `basis`, with an exact rank test.
pub(crate) fn spans(basis: &[Vector], v: &[CycNum], dim: usize, order: u32) -> bool {
    is_zero_vec(v) || crate::exactla::in_span(basis, v, dim, order)
}

#[cfg(test)]
mod tests;
