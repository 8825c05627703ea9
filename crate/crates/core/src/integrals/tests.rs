use super::*;
use crate::abgroup::FinAbGroup;
use crate::catalog::{default_order, standard_catalog, trivial_instance, AlgebraKind};
use crate::exactla::{vadd, Tensor3};
use crate::testdata::nontrivial_dim4;

fn instance(kind: AlgebraKind, over: &[u32]) -> YDHopfAlgebra {
    let g = FinAbGroup::new(over.to_vec()).unwrap();
    let n = default_order(&g, &kind);
    trivial_instance(&g, &kind, n)
}

fn cyc(c: &[u32]) -> FinAbGroup {
    FinAbGroup::new(c.to_vec()).unwrap()
}

fn q(num: i64, den: i64, n: u32) -> CycNum {
    CycNum::from_frac(num, den, n)
}

#[test]
fn group_algebra_of_z3() {
    let a = instance(AlgebraKind::GroupAlgebra(cyc(&[3])), &[2]);
    let n = a.order();
    let p = compute_integrals(&a).unwrap();
    assert_eq!(p.element, vec![q(1, 3, n); 3]);
    assert_eq!(p.functional, vec![q(3, 1, n), q(0, 1, n), q(0, 1, n)]);
}

#[test]
fn function_algebra_of_z3() {
    let a = instance(AlgebraKind::DualGroupAlgebra(cyc(&[3])), &[2]);
    let n = a.order();
    let p = compute_integrals(&a).unwrap();
    assert_eq!(p.element, unit_vec(3, 0, n));
    assert_eq!(p.functional, vec![CycNum::one(n); 3]);
}

#[test]
fn catalog_integral_identities() {
    for (name, a) in standard_catalog() {
        let p = compute_integrals(&a).unwrap();
        let rep = verify_integral_properties(&a, &p);
        assert!(rep.passed(), "{name}: {:?}", rep.failures());
        assert_eq!(
            dot(&p.functional, a.unit()),
            CycNum::from_int(a.dim() as i64, a.order())
        );
    }
}

#[test]
fn nontrivial_integral_identities() {
    for a in [nontrivial_dim4(false), nontrivial_dim4(true).dualize()] {
        let p = compute_integrals(&a).unwrap();
        let rep = verify_integral_properties(&a, &p);
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}

#[test]
fn dual_integrals_are_swapped_under_the_pairing() {
    for a in [
        nontrivial_dim4(false),
        instance(AlgebraKind::GroupAlgebra(cyc(&[2, 2])), &[4]),
    ] {
        let n = a.order();
        let dim = CycNum::from_int(a.dim() as i64, n);
        let p = compute_integrals(&a).unwrap();
        let pd = compute_integrals(&a.dualize()).unwrap();
        assert_eq!(pd.element, vscale(&p.functional, &dim.inv().unwrap()));
        assert_eq!(pd.functional, vscale(&p.element, &dim));
    }
}

#[test]
fn degenerate_integral_systems() {
    let n = 1;
    // K[x]/(x^2) with eps(x) = 0: the integral x has counit zero
    let mut t = Tensor3::zeros(2, 2, 2, n);
    t.set(0, 0, 0, CycNum::one(n));
    t.set(0, 1, 1, CycNum::one(n));
    t.set(1, 0, 1, CycNum::one(n));
    let counit = vec![CycNum::one(n), CycNum::zero(n)];
    let prod = SparseProduct::from_tensor(&t);
    assert_eq!(
        integral_element(&prod, &counit, n),
        Err(YdhError::NotSemisimple)
    );
    let zero = SparseProduct::from_tensor(&Tensor3::zeros(3, 3, 3, n));
    assert_eq!(
        integral_element(&zero, &zero_vec(3, n), n),
        Err(YdhError::NotUnique(3))
    );
}

#[test]
fn freeness_extremes() {
    for a in [
        nontrivial_dim4(false),
        instance(AlgebraKind::DualGroupAlgebra(cyc(&[6])), &[2]),
    ] {
        let d = a.dim();
        let n = a.order();
        let f = check_freeness(&a, &[a.unit().clone()]).unwrap();
        assert_eq!(f.rank, d);
        assert!(f.checks.passed());
        let all: Vec<Vector> = (0..d).map(|i| unit_vec(d, i, n)).collect();
        let f = check_freeness(&a, &all).unwrap();
        assert_eq!(f.rank, 1);
        assert!(f.checks.passed());
    }
}

#[test]
fn freeness_of_subgroup_algebra() {
    // K[2Z/4] inside K[Z/4]: basis elements 0 and 2
    let a = instance(AlgebraKind::GroupAlgebra(cyc(&[4])), &[2]);
    let n = a.order();
    let f = check_freeness(&a, &[unit_vec(4, 0, n), unit_vec(4, 2, n)]).unwrap();
    assert_eq!(f.rank, 2);
    assert!(f.checks.passed());
    assert_eq!(f.sub_integrals.element, vec![q(1, 2, n), q(1, 2, n)]);
}

#[test]
fn freeness_rejects_non_substructures() {
    let a = instance(AlgebraKind::GroupAlgebra(cyc(&[4])), &[2]);
    let n = a.order();
    let x = unit_vec(4, 1, n);
    let b = vadd(&x, &unit_vec(4, 3, n));
    assert!(matches!(
        check_freeness(&a, &[a.unit().clone(), b]),
        Err(YdhError::NotUnitalSubalgebra(_))
    ));
    assert!(matches!(
        check_freeness(&a, &[x]),
        Err(YdhError::NotUnitalSubalgebra(_))
    ));
    // span{1, x + y, xy} in K[Z/2 x Z/2] is a subalgebra but not a subcoalgebra
    let a = instance(AlgebraKind::GroupAlgebra(cyc(&[2, 2])), &[2]);
    let n = a.order();
    let basis = [
        unit_vec(4, 0, n),
        vadd(&unit_vec(4, 1, n), &unit_vec(4, 2, n)),
        unit_vec(4, 3, n),
    ];
    assert!(matches!(
        check_freeness(&a, &basis),
        Err(YdhError::NotSubcoalgebra(_))
    ));
}
