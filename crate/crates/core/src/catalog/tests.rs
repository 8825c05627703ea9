use super::*;
use crate::abgroup::FinAbGroup;
use crate::commalg::{analyze, AnalysisConfig};
use crate::error::YdhError;
use crate::ydhopf::verify_axioms;

fn swap_ansatz() -> Ansatz {
    Ansatz {
        phi: vec![vec![0, 1, 3, 2]],
        psi: vec![vec![0, 1, 3, 2]],
    }
}

#[test]
fn catalog_is_large_enough_and_trivial() {
    let cat = standard_catalog();
    assert_eq!(cat.len(), 30);
    for (name, a) in cat {
        assert!(verify_axioms(&a).passed(), "{name}");
        assert!(a.is_trivial().trivial, "{name}");
    }
}

#[test]
fn point_algebra() {
    let g = FinAbGroup::cyclic(2);
    let a = trivial_instance(&g, &AlgebraKind::GroupAlgebra(FinAbGroup::trivial()), 2);
    assert_eq!(a.dim(), 1);
    assert!(verify_axioms(&a).passed());
}

#[test]
fn ansatz_classes_over_z2() {
    let g = FinAbGroup::cyclic(2);
    assert_eq!(enumerate_ansatze(&g, 1).len(), 1);
    assert_eq!(enumerate_ansatze(&g, 2).len(), 1);
    // id/id, id/t, t/id, t/t with t a transposition of e_2, e_3
    let four = enumerate_ansatze(&g, 4);
    assert_eq!(four.len(), 4);
    assert!(four.contains(&swap_ansatz()));
}

#[test]
fn dim_one_is_the_unit_algebra() {
    let out = search_nontrivial(&SearchConfig::new(FinAbGroup::cyclic(2), 1)).unwrap();
    assert_eq!(out.instances.len(), 1);
    assert!(out.instances[0].trivial);
}

#[test]
fn coprime_dimension_is_confirmed_then_pruned() {
    let cfg = SearchConfig::new(FinAbGroup::cyclic(2), 3);
    let first = search_nontrivial(&cfg).unwrap();
    let second = search_nontrivial(&cfg).unwrap();
    let runs = [&first, &second];
    assert!(runs.iter().any(|o| o.confirmation_run) || runs.iter().all(|o| o.pruned));
    assert!(second.pruned);
    assert_eq!(first.nontrivial().count(), 0);
    let mut full = cfg.clone();
    full.prune_coprime = false;
    let out = search_nontrivial(&full).unwrap();
    assert!(!out.exhausted && !out.pruned);
    assert!(!out.instances.is_empty());
    assert_eq!(out.nontrivial().count(), 0);
}

#[test]
fn nontrivial_dimension_four() {
    let mut cfg = SearchConfig::new(FinAbGroup::cyclic(2), 4);
    cfg.ansatz = Some(vec![swap_ansatz()]);
    let out = search_nontrivial(&cfg).unwrap().complete().unwrap();
    let found: Vec<_> = out.nontrivial().collect();
    assert_eq!(found.len(), 2);
    for f in found {
        assert!(verify_axioms(&f.algebra).passed());
        let rep = analyze(&f.algebra, AnalysisConfig::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert!(rep.idempotents.iter().any(|r| r.index == 2));
    }
}

#[test]
fn search_is_deterministic() {
    let mut cfg = SearchConfig::new(FinAbGroup::cyclic(2), 4);
    cfg.ansatz = Some(vec![swap_ansatz()]);
    let a = search_nontrivial(&cfg).unwrap();
    let b = search_nontrivial(&cfg).unwrap();
    assert_eq!(a.instances.len(), b.instances.len());
    for (x, y) in a.instances.iter().zip(&b.instances) {
        assert_eq!(x.algebra.comult(), y.algebra.comult());
    }
}

#[test]
fn budget_exhaustion_is_flagged() {
    let mut cfg = SearchConfig::new(FinAbGroup::cyclic(2), 4);
    cfg.max_nodes = 1;
    let out = search_nontrivial(&cfg).unwrap();
    assert!(out.exhausted);
    assert!(matches!(out.complete(), Err(YdhError::BudgetExhausted(_))));
}

#[test]
fn bad_ansatz_rejected() {
    let mut cfg = SearchConfig::new(FinAbGroup::cyclic(2), 3);
    cfg.prune_coprime = false;
    cfg.ansatz = Some(vec![Ansatz {
        phi: vec![vec![0, 2, 1]],
        psi: vec![vec![1, 0, 2]],
    }]);
    assert!(matches!(
        search_nontrivial(&cfg),
        Err(YdhError::InvalidAction(_))
    ));
    cfg.ansatz = Some(vec![Ansatz {
        phi: vec![vec![0, 2, 1]],
        psi: vec![vec![0, 1, 2], vec![0, 1, 2]],
    }]);
    assert!(search_nontrivial(&cfg).is_err());
}
