use super::*;
use proptest::prelude::*;

fn c(s: &str, n: u32) -> CycNum {
    CycNum::parse(s, n).unwrap()
}

fn m(rows: &[&[&str]], n: u32) -> Mat {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| c(s, n)).collect())
            .collect(),
        n,
    )
}

fn arb_mat(r: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec((-3i64..=3, -2i64..=2), r * cols).prop_map(move |v| {
        let data: Vec<Vec<CycNum>> = v
            .chunks(cols)
            .map(|row| {
                row.iter()
                    .map(|&(a, b)| {
                        &CycNum::from_int(a, 4)
                            + &(&CycNum::from_int(b, 4) * &CycNum::zeta_pow(4, 1))
                    })
                    .collect()
            })
            .collect();
        Mat::from_rows(data, 4)
    })
}

#[test]
fn kernel_and_rank_of_known_matrix() {
    let a = m(&[&["1", "2", "3"], &["2", "4", "6"], &["1", "z", "0"]], 4);
    assert_eq!(a.rank(), 2);
    let k = a.kernel();
    assert_eq!(k.len(), 1);
    assert!(is_zero_vec(&a.mul_vec(&k[0])));
}

#[test]
fn inconsistent_and_singular_reported() {
    let a = m(&[&["1", "1"], &["1", "1"]], 1);
    assert_eq!(
        a.solve(&[CycNum::one(1), CycNum::zero(1)]),
        Err(YdhError::Inconsistent)
    );
    assert_eq!(a.inverse(), Err(YdhError::Singular));
}

#[test]
fn charpoly_of_rotation_needs_i() {
    let a = m(&[&["0", "-1"], &["1", "0"]], 1);
    assert!(matches!(a.eigenvalues(), Err(YdhError::NonSplitField(_))));
    let a = m(&[&["0", "-1"], &["1", "0"]], 4);
    let ev = a.eigenvalues().unwrap();
    assert_eq!(ev.len(), 2);
    // monomial fast path agrees with the characteristic polynomial route
    let split = a.charpoly().roots_in_field();
    assert!(split.roots.iter().all(|(r, _)| ev.contains(r)));
}

#[test]
fn joint_eigenspaces_of_conjugated_diagonals() {
    let n = 4;
    let p = m(&[&["1", "1", "0"], &["0", "1", "z"], &["1", "0", "1"]], n);
    let pinv = p.inverse().unwrap();
    let d1 = m(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "2"]], n);
    let d2 = m(&[&["z", "0", "0"], &["0", "-1", "0"], &["0", "0", "-1"]], n);
    let a1 = p.mul(&d1).mul(&pinv);
    let a2 = p.mul(&d2).mul(&pinv);
    let spaces = split_invariant(&[a1.clone(), a2.clone()], 3, n, None).unwrap();
    assert_eq!(spaces.len(), 3);
    for s in &spaces {
        assert_eq!(s.basis.len(), 1);
        let v = &s.basis[0];
        assert_eq!(a1.mul_vec(v), vscale(v, &s.eigenvalues[0]));
        assert_eq!(a2.mul_vec(v), vscale(v, &s.eigenvalues[1]));
    }
}

#[test]
fn non_diagonalizable_rejected() {
    let a = m(&[&["1", "1"], &["0", "1"]], 1);
    assert!(matches!(
        split_invariant(&[a], 2, 1, None),
        Err(YdhError::PreconditionViolated(_))
    ));
}

#[test]
fn tensor3_fibers() {
    let mut t = Tensor3::zeros(2, 3, 2, 1);
    t.set(1, 2, 0, CycNum::from_int(5, 1));
    assert_eq!(t.fiber(1, 2)[0], CycNum::from_int(5, 1));
    let nz: Vec<_> = t.nonzeros().map(|(i, _)| i).collect();
    assert_eq!(nz, vec![[1, 2, 0]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn kernel_vectors_are_annihilated(a in arb_mat(3, 4)) {
        let k = a.kernel();
        prop_assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            prop_assert!(is_zero_vec(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_and_inverse_agree(a in arb_mat(3, 3), b in arb_mat(3, 1)) {
        let bv = b.col(0);
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(a.mul(&inv).is_identity());
                let x = a.solve(&bv).unwrap();
                prop_assert_eq!(a.mul_vec(&x), bv);
                prop_assert!(!a.det().is_zero());
            }
            Err(_) => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in arb_mat(3, 3), b in arb_mat(3, 3)) {
        prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }

    #[test]
    fn cayley_hamilton(a in arb_mat(3, 3)) {
        let p = a.charpoly();
        let mut acc = Mat::zeros(3, 3, 4);
        for coef in p.coeffs().iter().rev() {
            acc = acc.mul(&a).add(&Mat::identity(3, 4).scale(coef));
        }
        prop_assert!(acc.is_zero());
        // agreement with det(x I - a) at x = 2
        let x = CycNum::from_int(2, 4);
        prop_assert_eq!(p.eval(&x), Mat::identity(3, 4).scale(&x).sub(&a).det());
    }
}
