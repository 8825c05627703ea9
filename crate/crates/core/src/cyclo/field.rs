use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Reduction data for Q(zeta_n) in the power basis modulo the n-th cyclotomic polynomial.
#[derive(Debug)]
pub struct CycField {
    pub(crate) order: u32,
    pub(crate) phi: usize,
    /// Cyclotomic polynomial, ascending coefficients, monic of degree `phi`.
    pub(crate) poly: Vec<BigInt>,
    /// `powers[k]` is zeta^k written in the power basis, for `k < max(order, 2*phi - 1)`.
    pub(crate) powers: Vec<Vec<BigInt>>,
}

impl CycField {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_poly(&self) -> &[BigInt] {
        &self.poly
    }

    /// zeta^k reduced, for any integer k.
    pub(crate) fn power(&self, k: i64) -> &[BigInt] {
        let n = self.order as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<CycField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared field data for order `n` (n >= 1).
pub fn field(n: u32) -> Arc<CycField> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(f) = cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let built = Arc::new(build(n));
    cache().lock().unwrap().entry(n).or_insert(built).clone()
}

/// Integer coefficients of the n-th cyclotomic polynomial, ascending.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    poly_cache().lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quo = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quo
}

fn build(n: u32) -> CycField {
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let count = (n as usize).max(2 * phi).max(1);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by zeta
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..phi {
                cur[i] -= &top * &poly[i];
            }
        }
    }
    CycField {
        order: n,
        phi,
        poly,
        powers,
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Euler totient.
pub fn totient(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}
