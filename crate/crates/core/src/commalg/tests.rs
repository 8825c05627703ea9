use super::*;
use crate::catalog::standard_catalog;
use crate::testdata::nontrivial_dim4;

fn assert_clean(name: &str, rep: &AnalysisReport) {
    assert!(rep.passed(), "{name}: {:?}", rep.failures());
}

#[test]
fn dim4_full_analysis() {
    for conj in [false, true] {
        let a = nontrivial_dim4(conj);
        let rep = analyze(&a, AnalysisConfig::default()).unwrap();
        assert_clean("dim4", &rep);
        assert!(!rep.trivial);
        let idx: Vec<usize> = rep.idempotents.iter().map(|r| r.index).collect();
        assert!(idx.contains(&2), "{idx:?}");
    }
}

#[test]
fn dim4_dual_analysis() {
    // the characters of the dual need a square root of i
    let a = nontrivial_dim4(false).dualize();
    assert!(matches!(Analysis::new(&a), Err(YdhError::NonSplitField(_))));
    let a = a.with_order(8).unwrap();
    let rep = analyze(&a, AnalysisConfig::default()).unwrap();
    assert_clean("dim4 dual", &rep);
}

#[test]
fn catalog_analysis() {
    let cfg = AnalysisConfig {
        tensor_ideals: false,
        ..AnalysisConfig::default()
    };
    for (name, a) in standard_catalog() {
        let rep = analyze(&a, cfg.clone()).unwrap();
        assert_clean(&name, &rep);
        assert!(rep.trivial);
        assert!(rep.idempotents.iter().all(|r| r.index == 1), "{name}");
    }
}

#[test]
fn catalog_tensor_ideals_small() {
    for (name, a) in standard_catalog().into_iter().filter(|(_, a)| a.dim() <= 3) {
        let rep = analyze(&a, AnalysisConfig::default()).unwrap();
        assert_clean(&name, &rep);
    }
}

#[test]
fn idempotent_formulas_agree() {
    let a = nontrivial_dim4(false);
    let an = Analysis::new(&a).unwrap();
    for x in 0..an.dim() {
        let e = idempotent_from_character(&an.algebra, an.eta(x), &an.integrals.element).unwrap();
        assert_eq!(&e, an.e(x));
    }
    assert_eq!(an.char_index(&an.integrals.functional), None);
}

#[test]
fn trivial_subalgebra_of_dim4() {
    for conj in [false, true] {
        let a = nontrivial_dim4(conj).with_order(8).unwrap();
        let t = find_trivial_subalgebra(&a).unwrap();
        assert!(t.checks.passed(), "{:?}", t.checks.failures());
        assert!(t.dim > 1 && 4 % t.dim == 0);
        assert!(t.algebra.is_trivial().trivial);
    }
}

#[test]
fn trivial_subalgebra_of_catalog() {
    for (name, a) in standard_catalog() {
        let t = find_trivial_subalgebra(&a).unwrap();
        assert!(t.checks.passed(), "{name}: {:?}", t.checks.failures());
    }
}

#[test]
fn product_criterion_on_dim4() {
    let an = Analysis::new(&nontrivial_dim4(false)).unwrap();
    let mut seen = [false; 2];
    for x in 0..4 {
        for y in 0..4 {
            let c = character_product_criterion(&an, x, y).unwrap();
            seen[c[0] as usize] = true;
        }
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn orbit_sizes_and_core_on_dim4() {
    let an = Analysis::new(&nontrivial_dim4(false)).unwrap();
    for x in 0..4 {
        let r = an.rec(x);
        assert_eq!(r.orbit.len(), r.index);
        let c = core(&an, x).unwrap();
        assert!(c.checks.passed(), "e{x}: {:?}", c.checks.failures());
        assert_eq!(c.omegas.len(), c.m);
    }
}

#[test]
fn point_mass_needs_dimension_above_one() {
    let g = crate::abgroup::FinAbGroup::cyclic(2);
    let kind = crate::catalog::AlgebraKind::GroupAlgebra(crate::abgroup::FinAbGroup::trivial());
    let a = crate::catalog::trivial_instance(&g, &kind, 2);
    assert!(matches!(
        find_trivial_subalgebra(&a),
        Err(YdhError::PreconditionViolated(_))
    ));
}
