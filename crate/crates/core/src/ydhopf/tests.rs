use super::*;
use crate::abgroup::{all_subgroups, FinAbGroup, Side};
use crate::catalog::{default_order, trivial_instance, AlgebraKind};
use crate::exactla::dot;
use crate::testdata::nontrivial_dim4;
use crate::ydmod::outer;
use proptest::prelude::*;

fn g(f: &[u32]) -> FinAbGroup {
    FinAbGroup::new(f.to_vec()).unwrap()
}

fn group_algebra(c: &[u32], over: &[u32]) -> YDHopfAlgebra {
    let kind = AlgebraKind::GroupAlgebra(g(c));
    trivial_instance(&g(over), &kind, default_order(&g(over), &kind))
}

fn function_algebra(c: &[u32], over: &[u32]) -> YDHopfAlgebra {
    let kind = AlgebraKind::DualGroupAlgebra(g(c));
    trivial_instance(&g(over), &kind, default_order(&g(over), &kind))
}

fn same_structure(a: &YDHopfAlgebra, b: &YDHopfAlgebra) -> bool {
    a.mult() == b.mult()
        && a.comult() == b.comult()
        && a.unit() == b.unit()
        && a.counit() == b.counit()
}

#[test]
fn group_algebra_passes_everything() {
    let a = group_algebra(&[3], &[2]);
    let rep = verify_axioms(&a);
    assert!(rep.passed(), "{:?}", rep.failures());
    assert!(a.is_trivial().trivial);
}

#[test]
fn perturbed_multiplication_breaks_associativity() {
    let a = group_algebra(&[3], &[2]);
    let mut mult = a.mult().clone();
    mult.set(1, 1, 2, CycNum::from_int(2, a.order()));
    let bad = YDHopfAlgebra::new(
        a.module().clone(),
        mult,
        a.unit().clone(),
        a.comult().clone(),
        a.counit().clone(),
        None,
        YdSide::Left,
    )
    .unwrap();
    let rep = verify_axioms(&bad);
    let check = rep.get("associativity").unwrap();
    assert!(!check.passed);
    assert!(check.witness.is_some());
}

#[test]
fn antipodes_of_group_and_function_algebras() {
    for a in [
        group_algebra(&[4], &[2]),
        function_algebra(&[4], &[2]),
        group_algebra(&[2, 2], &[2, 2]),
    ] {
        let given = a.antipode().unwrap().clone();
        let solved = solve_antipode(&a.clone().with_antipode(None)).unwrap();
        assert_eq!(given, solved);
    }
}

#[test]
fn zero_coproduct_has_no_antipode() {
    let a = group_algebra(&[2], &[2]);
    let mut comult = a.comult().clone();
    comult.set(1, 1, 1, CycNum::zero(a.order()));
    let bad = YDHopfAlgebra::new(
        a.module().clone(),
        a.mult().clone(),
        a.unit().clone(),
        comult,
        a.counit().clone(),
        None,
        YdSide::Left,
    )
    .unwrap();
    assert_eq!(solve_antipode(&bad), Err(YdhError::NoAntipode));
}

#[test]
fn malformed_dimensions_rejected() {
    let a = group_algebra(&[2], &[2]);
    let r = YDHopfAlgebra::new(
        a.module().clone(),
        Tensor3::zeros(3, 3, 3, 2),
        a.unit().clone(),
        a.comult().clone(),
        a.counit().clone(),
        None,
        YdSide::Left,
    );
    assert!(matches!(r, Err(YdhError::DimensionMismatch { .. })));
}

#[test]
fn nontrivial_example_verifies() {
    for conj in [false, true] {
        let a = nontrivial_dim4(conj);
        let rep = verify_axioms(&a);
        assert!(rep.passed(), "{:?}", rep.failures());
        let t = a.is_trivial();
        assert!(!t.trivial);
        let (i, j) = t.witness.unwrap();
        let s = a.braid(&outer(&unit_vec(4, i, 4), &unit_vec(4, j, 4), 4));
        assert_ne!(s, outer(&unit_vec(4, j, 4), &unit_vec(4, i, 4), 4));
    }
}

#[test]
fn dual_and_op_cop_verify() {
    for a in [
        nontrivial_dim4(false),
        group_algebra(&[2, 2], &[4]),
        function_algebra(&[3], &[2]),
    ] {
        let ad = a.dualize();
        assert_eq!(ad.side(), YdSide::Right);
        let rep = verify_axioms(&ad);
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(a.is_trivial().trivial, ad.is_trivial().trivial);
        let back = ad.dualize();
        assert!(same_structure(&back, &a));
        assert_eq!(back.module().phi_gens(), a.module().phi_gens());
        let oc = a.op_cop();
        assert!(verify_axioms(&oc).passed());
        let left = ad.to_left_over_dual().unwrap();
        assert_eq!(left.braid_matrix(), ad.braid_matrix());
        assert!(verify_axioms(&left).passed());
    }
}

#[test]
fn op_cop_of_commutative_cocommutative_is_identity() {
    let a = group_algebra(&[3], &[2]);
    assert!(same_structure(&a.op_cop(), &a));
}

#[test]
fn dual_of_group_algebra_is_function_algebra() {
    let a = group_algebra(&[2, 2], &[2]);
    let f = function_algebra(&[2, 2], &[2]);
    assert!(same_structure(&a.dualize(), &f));
}

#[test]
fn change_group_preserves_braiding() {
    let a = nontrivial_dim4(false);
    let grp = a.module().group().clone();
    for t in all_subgroups(&grp, Side::Group) {
        for q in all_subgroups(&grp, Side::Dual) {
            match a.change_group(&t, &q) {
                Ok(b) => {
                    assert!(verify_axioms(&b).passed());
                    assert_eq!(b.braid_matrix(), a.braid_matrix());
                }
                Err(e) => assert!(matches!(e, YdhError::PreconditionViolated(_))),
            }
        }
    }
    let triv = group_algebra(&[3], &[2, 2]);
    let whole = triv
        .change_group(
            &Subgroup::whole(&g(&[2, 2]), Side::Group),
            &Subgroup::whole(&g(&[2, 2]), Side::Dual),
        )
        .unwrap();
    assert_eq!(whole.module().group(), &FinAbGroup::trivial());
    assert!(verify_axioms(&whole).passed());
}

#[test]
fn antipode_fixes_unit_and_counit() {
    for a in [nontrivial_dim4(false), function_algebra(&[6], &[2])] {
        let s = a.antipode_or_solve().unwrap();
        assert_eq!(s.mul_vec(a.unit()), *a.unit());
        assert_eq!(s.vec_mul(a.counit()), *a.counit());
    }
}

fn small(vals: &[(i64, i64)]) -> Vector {
    vals.iter()
        .map(|&(x, y)| {
            &CycNum::from_int(x, 4) + &(&CycNum::from_int(y, 4) * &CycNum::zeta_pow(4, 1))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn dual_pairing_is_a_bialgebra_form(
        x in proptest::collection::vec((-3i64..=3, -2i64..=2), 4),
        y in proptest::collection::vec((-3i64..=3, -2i64..=2), 4),
        f in proptest::collection::vec((-3i64..=3, -2i64..=2), 4),
        f2 in proptest::collection::vec((-3i64..=3, -2i64..=2), 4),
    ) {
        let a = nontrivial_dim4(false);
        let ad = a.dualize();
        let (x, y, f, f2) = (small(&x), small(&y), small(&f), small(&f2));
        // <a (x) a', Delta*(f)> = <a a', f>
        let df = ad.delta(&f);
        prop_assert_eq!(dot(&df.mul_vec(&y), &x), dot(&a.mul(&x, &y), &f));
        // <a, f f'> = <Delta(a), f (x) f'>
        let da = a.delta(&x);
        prop_assert_eq!(dot(&x, &ad.mul(&f, &f2)), dot(&da.mul_vec(&f2), &f));
    }
}
