//! Triviality when dim A and |G| are coprime, and extraction of a trivial subalgebra from a
//! cocommutative cosemisimple algebra.

use num_integer::Integer;
use serde::Serialize;

use super::antipode::core;
use super::Analysis;
use crate::checks::CheckList;
use crate::error::{Result, YdhError};
use crate::exactla::{same_span, Vector};
use crate::ydhopf::{verify_axioms, YDHopfAlgebra};

/// Asserts triviality when gcd(dim A, |G|) = 1 (a failure is a `TheoremViolation`), and
/// checks in every case that indices divide |G| and dim A and that for every pair (e, e')
///   {eta_e^-1 phi_g^*(eta_e) : g in Q_{e'}^perp} = {psi_gamma^*(eta_{e'}) eta_{e'}^-1 : gamma in T_e^perp}
/// together with the span identity it is derived from.
pub fn check_triviality_theorem(an: &Analysis) -> Result<CheckList> {
    let (d, n) = (an.dim(), an.order());
    let g = an.group().order();
    let coprime = d.gcd(&g) == 1;
    let triv = an.algebra.is_trivial();
    if coprime && !triv.trivial {
        return Err(crate::error::violation(
            "dim A and |G| coprime implies A trivial",
            format!("dim {d}, |G| = {g}, braiding differs from the flip at {:?}", triv.witness),
        ));
    }
    let mut rep = CheckList::default();
    rep.push_bool("coprime_implies_trivial", !coprime || triv.trivial, || {
        format!("{:?}", triv.witness)
    });
    let bad = an
        .records
        .iter()
        .find(|r| g % r.index != 0 || d % r.index != 0);
    rep.push_bool("index_divides_group_and_dimension", bad.is_none(), || {
        let r = bad.unwrap();
        format!("e{} has index {}", r.id, r.index)
    });

    let mut span_bad = None;
    let mut set_bad = None;
    for x in 0..d {
        let tp = an.rec(x).inertia.perp();
        for y in 0..d {
            let qp = an.rec(y).isotropy.perp();
            let lspan: Vec<Vector> = qp
                .elements()
                .iter()
                .map(|h| an.cmul(an.eta(an.phi_star(h, x)), an.eta(y)))
                .collect();
            let rspan: Vec<Vector> = tp
                .elements()
                .iter()
                .map(|c| an.cmul(an.eta(x), an.eta(an.psi_star(c, y))))
                .collect();
            if span_bad.is_none() && !same_span(&lspan, &rspan, d, n) {
                span_bad = Some(format!("e{x}, e{y}"));
            }
            let lset: Vec<Vector> = qp
                .elements()
                .iter()
                .map(|h| an.cmul(an.eta_inv(x), an.eta(an.phi_star(h, x))))
                .collect();
            let rset: Vec<Vector> = tp
                .elements()
                .iter()
                .map(|c| an.cmul(an.eta(an.psi_star(c, y)), an.eta_inv(y)))
                .collect();
            let same = lset.iter().all(|v| rset.contains(v)) && rset.iter().all(|v| lset.contains(v));
            if set_bad.is_none() && !same {
                set_bad = Some(format!("e{x}, e{y}"));
            }
        }
    }
    rep.push_consequence("character_span_identity", span_bad);
    rep.push_consequence("character_set_identity", set_bad);
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialSubalgebra {
    /// Idempotent of A* whose stability set spans B.
    pub chosen: usize,
    /// The idempotent of minimal index > 1 whose core supplied `chosen`, if one was needed.
    pub via_core_of: Option<usize>,
    pub basis: Vec<Vector>,
    pub dim: usize,
    #[serde(skip)]
    pub algebra: YDHopfAlgebra,
    pub checks: CheckList,
}

/// A trivial Yetter-Drinfeld Hopf subalgebra B of a cocommutative cosemisimple A with
/// dim B > 1, spanned by the characters of a stability set of an index-one idempotent of A*.
pub fn find_trivial_subalgebra(a: &YDHopfAlgebra) -> Result<TrivialSubalgebra> {
    let d = a.dim();
    if d <= 1 {
        return Err(YdhError::PreconditionViolated("dimension must exceed 1".into()));
    }
    let an = Analysis::new(&a.dualize()).map_err(|err| match err {
        YdhError::NotCommutative(s) => {
            YdhError::PreconditionViolated(format!("not cocommutative: {s}"))
        }
        YdhError::NotSemisimple | YdhError::NotUnique(_) => {
            YdhError::PreconditionViolated(format!("not cosemisimple: {err}"))
        }
        other => other,
    })?;
    let lam = an.lambda_index();
    let min_big = an
        .records
        .iter()
        .filter(|r| r.index > 1)
        .min_by_key(|r| (r.index, r.id))
        .map(|r| r.id);
    let (chosen, via) = match min_big {
        None => ((0..d).find(|&x| x != lam).unwrap(), None),
        Some(ep) => {
            let c = core(&an, ep)?;
            let pick = c
                .omegas
                .iter()
                .copied()
                .find(|&k| k != lam && an.rec(k).index == 1)
                .ok_or_else(|| {
                    crate::error::violation(
                        "the core of a minimal-index idempotent has an index-one character besides the counit",
                        format!("core of e{ep}: {:?}", c.omegas),
                    )
                })?;
            (pick, Some(ep))
        }
    };
    let basis = an.chars_of(&an.rec(chosen).stability_set);
    let b = a.subalgebra(&basis)?;
    let mut rep = CheckList::default();
    rep.extend_prefixed("axioms", verify_axioms(&b));
    let t = b.is_trivial();
    rep.push_bool("trivial", t.trivial, || format!("{:?}", t.witness));
    let m = basis.len();
    rep.push_bool("dimension_exceeds_one", m > 1, || format!("dim B = {m}"));
    rep.push_bool("dimension_divides", d % m == 0, || {
        format!("dim B = {m}, dim A = {d}")
    });
    Ok(TrivialSubalgebra {
        chosen,
        via_core_of: via,
        basis,
        dim: m,
        algebra: b,
        checks: rep,
    })
}
