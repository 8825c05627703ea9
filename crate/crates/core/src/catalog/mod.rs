//! Known trivial instances and the search for nontrivial commutative semisimple ones.

use serde::Serialize;

use crate::abgroup::FinAbGroup;
use crate::cyclo::lcm;
use crate::cyclo::CycNum;
use crate::exactla::{Mat, Tensor3};
use crate::ydhopf::YDHopfAlgebra;
use crate::ydmod::{YDModule, YdSide};

mod search;
#[cfg(test)]
mod tests;

pub use search::{
    enumerate_ansatze, search_nontrivial, Ansatz, CoefficientBudget, Found, SearchConfig,
    SearchOutcome,
};

/// Which ordinary Hopf algebra of a finite abelian group C to build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraKind {
    GroupAlgebra(FinAbGroup),
    DualGroupAlgebra(FinAbGroup),
}

impl AlgebraKind {
    pub fn base(&self) -> &FinAbGroup {
        match self {
            AlgebraKind::GroupAlgebra(c) | AlgebraKind::DualGroupAlgebra(c) => c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            AlgebraKind::GroupAlgebra(c) => format!("K[{c}]"),
            AlgebraKind::DualGroupAlgebra(c) => format!("K^({c})"),
        }
    }
}

/// Smallest cyclotomic order over which both groups' characters are defined.
pub fn default_order(group: &FinAbGroup, kind: &AlgebraKind) -> u32 {
    lcm(group.exponent().max(1), kind.base().exponent().max(1))
}

/// K[C] or K^C with trivial phi and psi over K[G], basis indexed by the elements of C in
/// lexicographic order.
pub fn trivial_instance(group: &FinAbGroup, kind: &AlgebraKind, order: u32) -> YDHopfAlgebra {
    let c = kind.base();
    let elems = c.elements();
    let d = elems.len();
    let one = CycNum::one(order);
    let zero = CycNum::zero(order);
    let mut mult = Tensor3::zeros(d, d, d, order);
    let mut comult = Tensor3::zeros(d, d, d, order);
    let mut antipode = Mat::zeros(d, d, order);
    let (unit, counit);
    for (i, x) in elems.iter().enumerate() {
        antipode.set(c.index_of(&c.neg(x)), i, one.clone());
    }
    match kind {
        AlgebraKind::GroupAlgebra(_) => {
            for (i, x) in elems.iter().enumerate() {
                comult.set(i, i, i, one.clone());
                for (j, y) in elems.iter().enumerate() {
                    mult.set(i, j, c.index_of(&c.add(x, y)), one.clone());
                }
            }
            unit = (0..d)
                .map(|i| if i == 0 { one.clone() } else { zero.clone() })
                .collect();
            counit = vec![one.clone(); d];
        }
        AlgebraKind::DualGroupAlgebra(_) => {
            for (i, x) in elems.iter().enumerate() {
                mult.set(i, i, i, one.clone());
                for (j, y) in elems.iter().enumerate() {
                    comult.set(c.index_of(&c.add(x, y)), i, j, one.clone());
                }
            }
            unit = vec![one.clone(); d];
            counit = (0..d)
                .map(|i| if i == 0 { one.clone() } else { zero.clone() })
                .collect();
        }
    }
    let module = YDModule::trivial(group.clone(), order, d);
    YDHopfAlgebra::new(
        module,
        mult,
        unit,
        comult,
        counit,
        Some(antipode),
        YdSide::Left,
    )
    .expect("well-formed by construction")
}

/// The desk-scale catalog: K[C] and K^C for C in {Z/2, Z/3, Z/4, Z/2 x Z/2, Z/6} over
/// G in {Z/2, Z/4, Z/2 x Z/2}, each with its default cyclotomic order.
pub fn standard_catalog() -> Vec<(String, YDHopfAlgebra)> {
    let cs = [vec![2], vec![3], vec![4], vec![2, 2], vec![6]];
    let gs = [vec![2], vec![4], vec![2, 2]];
    let mut out = Vec::new();
    for g in &gs {
        let grp = FinAbGroup::new(g.clone()).unwrap();
        for cf in &cs {
            let cgrp = FinAbGroup::new(cf.clone()).unwrap();
            for kind in [
                AlgebraKind::GroupAlgebra(cgrp.clone()),
                AlgebraKind::DualGroupAlgebra(cgrp.clone()),
            ] {
                let n = default_order(&grp, &kind);
                out.push((
                    format!("{} over {grp}", kind.label()),
                    trivial_instance(&grp, &kind, n),
                ));
            }
        }
    }
    out
}
