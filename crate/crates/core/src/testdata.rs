//! Hand-entered instances shared by unit tests.

use crate::abgroup::FinAbGroup;
use crate::cyclo::CycNum;
use crate::exactla::Tensor3;
use crate::ydhopf::YDHopfAlgebra;
use crate::ydmod::{YDModule, YdSide};

/// Commutative semisimple, dimension 4 over K[Z/2], N = 4. Idempotents e0..e3 with
/// phi = psi = (e1 e2). The characters multiply by
///   eta3^2 = eta0, eta1^2 = eta2^2 = a eta0 + b eta3, eta1 eta2 = b eta0 + a eta3,
///   eta3 eta1 = eta2, eta3 eta2 = eta1, a = (1 + i)/2, b = 1 - a,
/// which fixes the comultiplication. Passing `conj` uses a = (1 - i)/2.
pub fn nontrivial_dim4(conj: bool) -> YDHopfAlgebra {
    let n = 4;
    let i = CycNum::zeta_pow(n, if conj { 3 } else { 1 });
    let half = CycNum::from_frac(1, 2, n);
    let a = &half * &(&CycNum::one(n) + &i);
    let b = &CycNum::one(n) - &a;
    let one = CycNum::one(n);
    let d = 4;
    // table[x][y] = coefficients of eta_x eta_y in the eta basis
    let mut table = vec![vec![vec![CycNum::zero(n); d]; d]; d];
    for x in 0..d {
        table[0][x][x] = one.clone();
        table[x][0][x] = one.clone();
    }
    table[3][3][0] = one.clone();
    for x in [1, 2] {
        table[x][x][0] = a.clone();
        table[x][x][3] = b.clone();
    }
    for (x, y) in [(1, 2), (2, 1)] {
        table[x][y][0] = b.clone();
        table[x][y][3] = a.clone();
    }
    for (x, y, z) in [(3, 1, 2), (1, 3, 2), (3, 2, 1), (2, 3, 1)] {
        table[x][y][z] = one.clone();
    }
    let mut mult = Tensor3::zeros(d, d, d, n);
    let mut comult = Tensor3::zeros(d, d, d, n);
    for x in 0..d {
        mult.set(x, x, x, one.clone());
        for y in 0..d {
            for k in 0..d {
                if !table[x][y][k].is_zero() {
                    comult.set(k, x, y, table[x][y][k].clone());
                }
            }
        }
    }
    let grp = FinAbGroup::cyclic(2);
    let swap = vec![vec![0, 2, 1, 3]];
    let module = YDModule::from_permutations(grp, n, d, &swap, &swap).unwrap();
    let unit = vec![one.clone(); d];
    let counit = (0..d)
        .map(|k| if k == 0 { one.clone() } else { CycNum::zero(n) })
        .collect();
    YDHopfAlgebra::new(module, mult, unit, comult, counit, None, YdSide::Left).unwrap()
}
