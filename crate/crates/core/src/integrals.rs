//! Normalized two-sided integrals, their identities, and the divisibility check for
//! sub-Hopf algebras.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::checks::CheckList;
use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};
use crate::exactla::{dot, unit_vec, vaxpy, vscale, zero_vec, Mat, Vector};
use crate::ydhopf::{restrict_structure, SparseProduct, YDHopfAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralPair {
    /// Lambda in A with eps(Lambda) = 1.
    #[serde(rename = "integral_element")]
    pub element: Vector,
    /// lambda on A, the character of the regular representation.
    #[serde(rename = "integral_functional")]
    pub functional: Vector,
}

/// The kernel of a b - eps(a) b and b a - eps(a) b over the basis a, normalized by eps.
fn integral_element(prod: &SparseProduct, counit: &[CycNum], order: u32) -> Result<Vector> {
    let d = prod.dim();
    let mut sys = Mat::zeros(2 * d * d, d, order);
    for a in 0..d {
        let ea = unit_vec(d, a, order);
        let l = prod.left_matrix(&ea);
        let r = prod.right_matrix(&ea);
        for i in 0..d {
            for j in 0..d {
                let shift = if i == j {
                    counit[a].clone()
                } else {
                    CycNum::zero(order)
                };
                sys.set(a * d + i, j, l.get(i, j) - &shift);
                sys.set(d * d + a * d + i, j, r.get(i, j) - &shift);
            }
        }
    }
    let ker = sys.kernel();
    if ker.len() != 1 {
        return Err(YdhError::NotUnique(ker.len()));
    }
    let e = dot(counit, &ker[0]);
    let inv = e.inv().map_err(|_| YdhError::NotSemisimple)?;
    Ok(vscale(&ker[0], &inv))
}

/// lambda(e_i) = trace of b -> e_i b.
pub fn regular_trace(prod: &SparseProduct, order: u32) -> Vector {
    let d = prod.dim();
    (0..d)
        .map(|i| {
            let mut t = CycNum::zero(order);
            for j in 0..d {
                for (k, c) in prod.entry(i, j) {
                    if *k == j {
                        t += c;
                    }
                }
            }
            t
        })
        .collect()
}

fn integrals_from_tables(
    prod: &SparseProduct,
    unit: &[CycNum],
    counit: &[CycNum],
    coprod: &SparseProduct,
    order: u32,
) -> Result<IntegralPair> {
    let d = prod.dim();
    let element = integral_element(prod, counit, order)?;
    let functional = regular_trace(prod, order);
    // the same functional as an integral of the dual algebra, normalized by lambda(Lambda) = 1
    let dual = integral_element(coprod, unit, order)?;
    let at = dot(&dual, &element);
    let dual = vscale(&dual, &at.inv().map_err(|_| YdhError::NotSemisimple)?);
    if dual != functional {
        return Err(crate::error::violation(
            "the dual integral is the regular trace",
            format!(
                "trace {} vs dual integral {}",
                crate::exactla::render_vec(&functional),
                crate::exactla::render_vec(&dual)
            ),
        ));
    }
    let one = CycNum::one(order);
    if dot(&functional, &element) != one {
        return Err(crate::error::violation(
            "lambda(Lambda) = 1",
            dot(&functional, &element).render(),
        ));
    }
    if dot(&functional, unit) != CycNum::from_int(d as i64, order) {
        return Err(crate::error::violation(
            "lambda(1) = dim A",
            dot(&functional, unit).render(),
        ));
    }
    Ok(IntegralPair {
        element,
        functional,
    })
}

/// Lambda from the integral system and lambda as the regular trace, cross-checked against
/// the integral of the dual algebra.
pub fn compute_integrals(a: &YDHopfAlgebra) -> Result<IntegralPair> {
    integrals_from_tables(
        &a.algebra().product,
        a.unit(),
        a.counit(),
        &a.coproduct_table(),
        a.order(),
    )
}

pub type IntegralReport = CheckList;

pub fn verify_integral_properties(a: &YDHopfAlgebra, pair: &IntegralPair) -> IntegralReport {
    let d = a.dim();
    let n = a.order();
    let mut rep = IntegralReport::default();
    let lam = &pair.element;
    let fun = &pair.functional;
    let e = |i: usize| unit_vec(d, i, n);
    let one = CycNum::one(n);

    rep.push_bool("counit_of_integral", a.epsilon(lam) == one, || {
        a.epsilon(lam).render()
    });
    rep.push_bool("functional_on_integral", dot(fun, lam) == one, || {
        dot(fun, lam).render()
    });
    rep.push_bool(
        "functional_on_unit",
        dot(fun, a.unit()) == CycNum::from_int(d as i64, n),
        || dot(fun, a.unit()).render(),
    );
    let bad = (0..d).find(|&i| {
        let s = vscale(lam, &a.counit()[i]);
        a.mul(&e(i), lam) != s || a.mul(lam, &e(i)) != s
    });
    rep.push_bool("two_sided_integral", bad.is_none(), || {
        format!("e{}", bad.unwrap())
    });
    // a_(1) lambda(a_(2)) = lambda(a) 1 = lambda(a_(1)) a_(2)
    let bad = (0..d).find(|&k| {
        let dk = a.delta(&e(k));
        let want = vscale(a.unit(), &fun[k]);
        dk.mul_vec(fun) != want || dk.vec_mul(fun) != want
    });
    rep.push_bool("functional_is_integral", bad.is_none(), || {
        format!("e{}", bad.unwrap())
    });

    let s = match a.antipode_or_solve() {
        Ok(s) => s,
        Err(err) => {
            rep.push_consequence("antipode", Some(err.to_string()));
            return rep;
        }
    };
    rep.push_bool("antipode_fixes_integral", s.mul_vec(lam) == *lam, || {
        crate::exactla::render_vec(&s.mul_vec(lam))
    });
    rep.push_bool(
        "functional_antipode_invariant",
        s.vec_mul(fun) == *fun,
        || crate::exactla::render_vec(&s.vec_mul(fun)),
    );

    let dl = a.delta(lam);
    let mut bad = None;
    for k in 0..d {
        // lambda(a Lambda_(1)) S(Lambda_(2)) and S(Lambda_(1)) lambda(Lambda_(2) a)
        let mut left = zero_vec(d, n);
        let mut right = zero_vec(d, n);
        for i in 0..d {
            for j in 0..d {
                let c = dl.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let l = c * &dot(fun, &a.mul(&e(k), &e(i)));
                vaxpy(&mut left, &l, &s.col(j));
                let r = c * &dot(fun, &a.mul(&e(j), &e(k)));
                vaxpy(&mut right, &r, &s.col(i));
            }
        }
        if left != e(k) {
            bad = Some(format!("lambda(a Lambda_(1)) S(Lambda_(2)) at e{k}"));
            break;
        }
        if right != e(k) {
            bad = Some(format!("S(Lambda_(1)) lambda(Lambda_(2) a) at e{k}"));
            break;
        }
    }
    rep.push_consequence("casimir_reconstruction", bad);

    let f1 = dl.mul(&s.transpose());
    let f2 = s.mul(&dl);
    rep.push_bool("casimir_forms_agree", f1 == f2, || {
        "Lambda_(1) (x) S(Lambda_(2)) != S(Lambda_(1)) (x) Lambda_(2)".into()
    });
    rep.push_bool("integral_cocommutative", dl == dl.transpose(), || {
        "Delta(Lambda) is not flip invariant".into()
    });
    let mut bad = None;
    'tr: for i in 0..d {
        for j in 0..i {
            if dot(fun, &a.mul(&e(i), &e(j))) != dot(fun, &a.mul(&e(j), &e(i))) {
                bad = Some(format!("lambda(e{i} e{j}) != lambda(e{j} e{i})"));
                break 'tr;
            }
        }
    }
    rep.push_consequence("functional_cocommutative", bad);
    rep
}

/// Outcome of the divisibility check for a sub-Hopf algebra B of A.
#[derive(Clone, Debug, Serialize)]
pub struct Freeness {
    #[serde(rename = "freeness_rank")]
    pub rank: usize,
    pub sub_integrals: IntegralPair,
    pub checks: CheckList,
}

/// lambda_A restricted to B is (dim A / dim B) lambda_B, and lambda_A(Lambda_B) is that
/// integer; it is the rank of A as a free B-module.
pub fn check_freeness(a: &YDHopfAlgebra, basis: &[Vector]) -> Result<Freeness> {
    let d = a.dim();
    let n = a.order();
    let m = basis.len();
    let sub = restrict_structure(a, basis)?;
    let (prod, coprod) = (SparseProduct::from_tensor(&sub.mult), sub.coproduct_table());
    let pair_a = compute_integrals(a)?;
    let pair_b = integrals_from_tables(&prod, &sub.unit, &sub.counit, &coprod, n)?;
    let mut lambda_b = zero_vec(d, n);
    for (c, b) in pair_b.element.iter().zip(basis) {
        vaxpy(&mut lambda_b, c, b);
    }
    let r = dot(&pair_a.functional, &lambda_b);
    let rank = r
        .as_rational()
        .filter(|q| q.is_integer() && q.is_positive())
        .and_then(|q| q.to_integer().to_usize())
        .ok_or_else(|| YdhError::NonIntegralRank(r.render()))?;
    let mut checks = CheckList::default();
    checks.push_bool("rank_is_quotient_of_dimensions", rank * m == d, || {
        format!("lambda_A(Lambda_B) = {rank}, dim A = {d}, dim B = {m}")
    });
    let ratio = CycNum::from_frac(d as i64, m as i64, n);
    let bad = (0..m).find(|&i| dot(&pair_a.functional, &basis[i]) != &ratio * &pair_b.functional[i]);
    checks.push_bool("functional_restricts", bad.is_none(), || {
        format!("b{}", bad.unwrap())
    });
    Ok(Freeness {
        rank,
        sub_integrals: pair_b,
        checks,
    })
}

#[cfg(test)]
mod tests;
