use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::qpoly::QPoly;
use super::zfactor::{factor_rational, factor_squarefree};
use super::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Independent model: elements as polynomials modulo x^n - 1, compared modulo Phi_n by
/// long division with the textbook cyclotomic polynomial.
fn model_mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![q(0, 1); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % n] += x * y;
        }
    }
    out
}

fn model_equal(a: &[BigRational], x: &CycNum) -> bool {
    let n = x.order();
    let phi = QPoly::from_integers(&cyclotomic_polynomial(n));
    let diff = QPoly(a.to_vec()).sub(&QPoly(x.coeffs().to_vec()));
    diff.divrem(&phi).1.is_zero()
}

#[test]
fn cyclotomic_polynomials_match_known_values() {
    let cases: Vec<(u32, Vec<i64>)> = vec![
        (1, vec![-1, 1]),
        (2, vec![1, 1]),
        (3, vec![1, 1, 1]),
        (4, vec![1, 0, 1]),
        (6, vec![1, -1, 1]),
        (8, vec![1, 0, 0, 0, 1]),
        (12, vec![1, 0, -1, 0, 1]),
    ];
    for (n, c) in cases {
        let got: Vec<i64> = cyclotomic_polynomial(n)
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(got, c, "Phi_{n}");
    }
    assert_eq!(totient(12), 4);
    assert_eq!(totient(1), 1);
}

#[test]
fn zeta_power_identities() {
    for n in [1u32, 2, 3, 4, 5, 6, 8, 12] {
        let z = CycNum::zeta_pow(n, 1);
        assert!(z.pow(n as i64).is_one(), "zeta_{n}^{n}");
        let mut sum = CycNum::zero(n);
        for k in 0..n {
            sum += CycNum::zeta_pow(n, k as i64);
        }
        if n > 1 {
            assert!(sum.is_zero(), "sum of {n}-th roots");
        }
    }
    let i = CycNum::zeta_pow(4, 1);
    assert_eq!(&i * &i, CycNum::from_int(-1, 4));
}

#[test]
fn root_of_unity_requires_divisibility() {
    let w = CycNum::root_of_unity(3, 12).unwrap();
    assert_eq!(w, CycNum::zeta_pow(12, 4));
    assert!(w.pow(3).is_one());
    assert!(matches!(
        CycNum::root_of_unity(5, 12),
        Err(crate::YdhError::NonDivisibleOrders { .. })
    ));
}

#[test]
fn embedding_preserves_values() {
    let i4 = CycNum::zeta_pow(4, 1);
    let e = i4.embed(12).unwrap();
    assert_eq!(e, CycNum::zeta_pow(12, 3));
    assert!(matches!(
        i4.embed(6),
        Err(crate::YdhError::NonDivisibleOrders { from: 4, to: 6 })
    ));
    // mixed orders compare through the common field
    assert_eq!(i4, CycNum::zeta_pow(8, 2));
}

#[test]
fn render_and_parse_canonical() {
    let x = CycNum::parse("1/2 - 1/2*z^3", 8).unwrap();
    assert_eq!(x.render(), "1/2 - 1/2*z^3");
    assert_eq!(CycNum::parse("z^4", 4).unwrap().render(), "1");
    assert_eq!(CycNum::parse("z^2", 4).unwrap().render(), "-1");
    assert_eq!(CycNum::parse("-z + 2/4", 4).unwrap().render(), "1/2 - z");
    assert_eq!(CycNum::zero(5).render(), "0");
    assert_eq!(CycNum::parse("z^3", 3).unwrap().render(), "1");
    assert_eq!(CycNum::parse("z^2", 3).unwrap().render(), "-1 - z");
    assert!(CycNum::parse("1/0", 4).is_err());
    assert!(CycNum::parse("1 + + z", 4).is_err());
    assert!(CycNum::parse("", 4).is_err());
}

#[test]
fn inverse_of_nonrational() {
    let x = CycNum::parse("1 + z", 8).unwrap();
    let y = x.inv().unwrap();
    assert!((&x * &y).is_one());
    assert!(CycNum::zero(8).inv().is_err());
}

#[test]
fn zassenhaus_factors_products() {
    // (x^2 + 1)(x^2 - 2)(x + 3)(x^4 + 1)
    let f = QPoly::from_ints(&[1, 0, 1])
        .mul(&QPoly::from_ints(&[-2, 0, 1]))
        .mul(&QPoly::from_ints(&[3, 1]))
        .mul(&QPoly::from_ints(&[1, 0, 0, 0, 1]));
    let mut degs: Vec<usize> = factor_rational(&f)
        .iter()
        .map(|(p, _)| p.degree().unwrap())
        .collect();
    degs.sort();
    assert_eq!(degs, vec![1, 2, 2, 4]);
    // irreducible although reducible modulo every prime
    let sd = QPoly::from_ints(&[1, 0, -10, 0, 1]);
    assert_eq!(factor_squarefree(&sd.primitive_integer()).len(), 1);
    // non-monic with repeated factor
    let g = QPoly::from_ints(&[-1, 2])
        .mul(&QPoly::from_ints(&[-1, 2]))
        .mul(&QPoly::from_ints(&[1, 3, 5]));
    let fac = factor_rational(&g);
    assert!(fac
        .iter()
        .any(|(p, m)| *m == 2 && p == &QPoly(vec![q(-1, 2), q(1, 1)])));
    assert_eq!(fac.len(), 2);
}

#[test]
fn factor_product_of_many_linears() {
    let mut f = QPoly::from_ints(&[1]);
    for r in -6..=6 {
        f = f.mul(&QPoly::from_ints(&[-r, 1]));
    }
    let fac = factor_rational(&f);
    assert_eq!(fac.len(), 13);
    assert!(fac.iter().all(|(p, m)| p.degree() == Some(1) && *m == 1));
}

fn poly_from_roots(roots: &[CycNum], n: u32) -> CycPoly {
    let mut p = CycPoly::one(n);
    for r in roots {
        p = p.mul(&CycPoly::linear(r));
    }
    p
}

#[test]
fn roots_recovered_from_construction() {
    let n = 8;
    let roots = vec![
        CycNum::parse("1/2 + 1/2*z^2", n).unwrap(),
        CycNum::parse("z + z^3", n).unwrap(),
        CycNum::parse("-3", n).unwrap(),
        CycNum::parse("1/2 + 1/2*z^2", n).unwrap(),
    ];
    let split = poly_from_roots(&roots, n).roots_in_field();
    assert!(split.splits());
    assert_eq!(split.roots.len(), 3);
    let total: usize = split.roots.iter().map(|r| r.1).sum();
    assert_eq!(total, 4);
    for r in &roots {
        assert!(split.roots.iter().any(|(x, _)| x == r));
    }
}

#[test]
fn non_split_detected() {
    // sqrt(2) is not in Q(i) but is in Q(zeta_8)
    let p4 = CycPoly::new(
        vec![CycNum::from_int(-2, 4), CycNum::zero(4), CycNum::one(4)],
        4,
    );
    let s4 = p4.roots_in_field();
    assert!(!s4.splits());
    assert_eq!(s4.nonlinear_degrees, vec![2]);
    let p8 = CycPoly::new(
        vec![CycNum::from_int(-2, 8), CycNum::zero(8), CycNum::one(8)],
        8,
    );
    let s8 = p8.roots_in_field();
    assert!(s8.splits());
    for (r, _) in &s8.roots {
        assert_eq!(r * r, CycNum::from_int(2, 8));
    }
    // x^2 + x + 1 splits in Q(zeta_12) but not in Q(i)
    let c3 = |n| CycPoly::new(vec![CycNum::one(n), CycNum::one(n), CycNum::one(n)], n);
    assert!(!c3(4).roots_in_field().splits());
    assert_eq!(c3(12).roots_in_field().roots.len(), 2);
}

#[test]
fn monomial_fast_path_roots_of_unity() {
    // x^4 - 1 over Q(zeta_4)
    let p = CycPoly::new(
        vec![
            CycNum::from_int(-1, 4),
            CycNum::zero(4),
            CycNum::zero(4),
            CycNum::zero(4),
            CycNum::one(4),
        ],
        4,
    );
    let s = p.roots_in_field();
    assert_eq!(s.roots.len(), 4);
    // x^2 - i needs zeta_8
    let p = CycPoly::new(
        vec![-CycNum::zeta_pow(4, 1), CycNum::zero(4), CycNum::one(4)],
        4,
    );
    assert!(!p.roots_in_field().splits());
    let p = CycPoly::new(
        vec![-CycNum::zeta_pow(8, 2), CycNum::zero(8), CycNum::one(8)],
        8,
    );
    assert_eq!(p.roots_in_field().roots.len(), 2);
}

fn arb_cyc(n: u32) -> impl Strategy<Value = CycNum> {
    let phi = totient(n);
    proptest::collection::vec((-5i64..=5, 1i64..=4), phi).prop_map(move |v| {
        let c: Vec<BigRational> = v.into_iter().map(|(a, b)| q(a, b)).collect();
        CycNum::from_powers(&c, n)
    })
}

fn arb_order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12])
}

proptest! {
    #[test]
    fn multiplication_matches_model((n, a, b) in arb_order().prop_flat_map(|n| (Just(n), arb_cyc(n), arb_cyc(n)))) {
        let prod = &a * &b;
        let model = model_mul(a.coeffs(), b.coeffs(), n as usize);
        prop_assert!(model_equal(&model, &prod));
    }

    #[test]
    fn field_axioms((n, a, b, c) in arb_order().prop_flat_map(|n| (Just(n), arb_cyc(n), arb_cyc(n), arb_cyc(n)))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let _ = n;
    }

    #[test]
    fn embedding_is_a_ring_map((a, b) in (arb_cyc(4), arb_cyc(4))) {
        let ea = a.embed(12).unwrap();
        let eb = b.embed(12).unwrap();
        let (p1, p2) = ((&a * &b).embed(12).unwrap(), &ea * &eb);
        prop_assert_eq!(p1.coeffs(), p2.coeffs());
        let (s1, s2) = ((&a + &b).embed(12).unwrap(), &ea + &eb);
        prop_assert_eq!(s1.coeffs(), s2.coeffs());
    }

    #[test]
    fn render_parse_roundtrip((n, a) in arb_order().prop_flat_map(|n| (Just(n), arb_cyc(n)))) {
        let s = a.render();
        let back = CycNum::parse(&s, n).unwrap();
        prop_assert_eq!(back.coeffs(), a.coeffs());
        prop_assert_eq!(back.render(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn roots_of_constructed_polynomials(rs in proptest::collection::vec(arb_cyc(4), 1..4)) {
        let p = poly_from_roots(&rs, 4);
        let split = p.roots_in_field();
        prop_assert!(split.splits());
        let total: usize = split.roots.iter().map(|r| r.1).sum();
        prop_assert_eq!(total, rs.len());
        for r in &rs {
            prop_assert!(split.roots.iter().any(|(x, _)| x == r));
        }
    }
}
